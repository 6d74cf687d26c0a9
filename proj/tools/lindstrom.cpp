#include <iostream>

#include "lindstrom/cli.hpp"

int main(int argc, char** argv) { return lindstrom::cli::run(argc, argv, std::cout, std::cerr); }
