#include <iostream>

#include "gpspec/cli.hpp"

int main(int argc, char** argv) { return gpspec::cli::run(argc, argv, std::cout, std::cerr); }
