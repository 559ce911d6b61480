#include <iostream>

#include "cseval/cli.hpp"

int main(int argc, char** argv) { return cseval::cli::run(argc, argv, std::cout, std::cerr); }
