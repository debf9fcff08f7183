#include "catcom/cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "catcom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = catcom::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CATCOM_DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

json rel2_doc() {
  std::ifstream in(data("rel2.json"));
  return json::parse(in);
}

}  // namespace

TEST(Cli, VerifyPassesOnEverySampleFile) {
  for (const char* f : {"rel2.json", "fdhilb2.json", "realhilb2.json", "semilattice.json", "z2_table.json"}) {
    const auto r = run({"verify", "--input", data(f)});
    EXPECT_EQ(r.code, 0) << f << "\n" << r.out;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["schema_version"], "1");
    EXPECT_TRUE(j["passed"].get<bool>()) << f;
    for (const char* key : {"smc_axioms", "scalar_hom", "scalar_iso", "functoriality", "composite_laws", "tomography",
                            "monoidal_functor", "morphism_product_well_defined", "compact_closure", "unit", "com",
                            "physical_subcategory", "completion_finite"})
      EXPECT_TRUE(j["suite"].contains(key)) << f << " lacks " << key;
  }
}

TEST(Cli, VerifyIsDeterministic) {
  const auto a = run({"verify", "--input", data("fdhilb2.json"), "--seed", "17"});
  const auto b = run({"verify", "--input", data("fdhilb2.json"), "--seed", "17"});
  EXPECT_EQ(a.out, b.out);
  const auto c = run({"verify", "--input", data("rel2.json"), "--format", "md"});
  const auto d = run({"verify", "--input", data("rel2.json"), "--format", "md"});
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(c.out.rfind("# verify: rel-2", 0), 0u);
}

TEST(Cli, TomographyReportsVerdict) {
  const auto r = run({"tomography", "--input", data("realhilb2.json"), "--pair", "A", "A"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["dim_joint"], 10);
  EXPECT_EQ(j["rank_lambda"], 9);
  EXPECT_FALSE(j["locally_tomographic"].get<bool>());
  EXPECT_TRUE(j.contains("kernel_witness"));

  const auto c = json::parse(run({"tomography", "--input", data("fdhilb2.json")}).out);
  EXPECT_EQ(c["dim_joint"], 16);
  EXPECT_TRUE(c["locally_tomographic"].get<bool>());
}

TEST(Cli, ComListsModels) {
  const auto r = run({"com", "--input", data("rel2.json"), "--objects", "A"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["models"].size(), 2u);
  EXPECT_EQ(j["models"][1]["object"], "A");
  EXPECT_EQ(j["models"][1]["dim"], 3);
  EXPECT_EQ(j["models"][1]["omega_generator_count"], 3);
  EXPECT_TRUE(j["models"][1]["order_unit_certified"].get<bool>());
}

TEST(Cli, RepAndValidateRun) {
  const auto rep = run({"rep", "--input", data("fdhilb2.json")});
  ASSERT_EQ(rep.code, 0) << rep.err;
  EXPECT_EQ(json::parse(rep.out)["spaces"][1]["dim"], 4);
  EXPECT_EQ(run({"validate", "--input", data("semilattice.json")}).code, 0);
}

TEST(Cli, MalformedJsonIsInputError) {
  const auto path = write_temp("broken.json", "{\"backend\": \"rel\", ");
  const auto r = run({"verify", "--input", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error at byte"), std::string::npos);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "Config");
}

TEST(Cli, SchemaViolationsAreInputErrors) {
  auto doc = rel2_doc();
  doc["colour"] = "red";
  EXPECT_EQ(run({"verify", "--input", write_temp("unknown_key.json", doc.dump())}).code, 2);
  doc = rel2_doc();
  doc["backend"] = "hilbert";
  EXPECT_EQ(run({"verify", "--input", write_temp("bad_backend.json", doc.dump())}).code, 2);
  doc = rel2_doc();
  doc["units"]["A"]["kind"] = "trace";
  EXPECT_EQ(run({"com", "--input", write_temp("wrong_unit.json", doc.dump())}).code, 2);
  EXPECT_EQ(run({"com", "--input", data("rel2.json"), "--objects", "Q"}).code, 2);
}

TEST(Cli, UsageErrorsAreInputErrors) {
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"frobnicate", "--input", data("rel2.json")}).code, 2);
  EXPECT_EQ(run({"verify", "--input", data("rel2.json"), "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, InvalidScalarHomIsCheckFailure) {
  auto doc = json::parse(std::ifstream(data("z2_table.json")));
  doc["scalar_hom"] = {{"kind", "table"}, {"values", {{"e", 2}, {"s", 2}}}};
  const auto path = write_temp("bad_hom.json", doc.dump());
  const auto v = run({"verify", "--input", path});
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.err.find("UnitViolation"), std::string::npos);
  const auto val = run({"validate", "--input", path});
  EXPECT_EQ(val.code, 1);
  EXPECT_FALSE(json::parse(val.out)["passed"].get<bool>());
}

TEST(Cli, BrokenTableFailsValidation) {
  auto doc = json::parse(std::ifstream(data("z2_table.json")));
  doc["objects"] = json::array({"I", "A"});
  doc["morphisms"].push_back({{"id", "a"}, {"dom", "A"}, {"cod", "A"}});
  doc["identities"]["A"] = "a";
  doc["composition"][3] = json::array({"s", "s", "a"});
  const auto r = run({"validate", "--input", write_temp("broken_table.json", doc.dump())});
  EXPECT_EQ(r.code, 1);
  bool found = false;
  const auto report = json::parse(r.out);
  for (const auto& c : report["checks"])
    if (c["name"] == "composition_table_typed") {
      found = true;
      EXPECT_FALSE(c["passed"].get<bool>());
      EXPECT_NE(c["witness"].get<std::string>().find("s∘s"), std::string::npos);
    }
  EXPECT_TRUE(found);
}

TEST(Cli, VectorUnitsAreAccepted) {
  auto doc = rel2_doc();
  // values on the four subset states of A in enumeration order
  doc["units"]["A"] = {{"kind", "vector"}, {"coords", {0, 1, 1, 1}}};
  const auto r = run({"com", "--input", write_temp("vector_unit.json", doc.dump())});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["models"][1]["unit_provenance"], "user");
}
