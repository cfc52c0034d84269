#include <iostream>

#include "pbk_cli/cli.hpp"

int main(int argc, char** argv) { return pbk::cli::run(argc, argv, std::cout, std::cerr); }
