#include <iostream>

#include "pdmdirac/cli.hpp"

int main(int argc, char **argv) { return pdmdirac::cli::run(argc, argv, std::cout, std::cerr); }
