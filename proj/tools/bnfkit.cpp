#include <iostream>

#include "bnfkit/cli/cli.hpp"

int main(int argc, char** argv) { return bnfkit::cli::main(argc, argv, std::cout, std::cerr); }
