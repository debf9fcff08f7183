#include "catcom/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return catcom::cli::main(argc, argv, std::cout, std::cerr); }
