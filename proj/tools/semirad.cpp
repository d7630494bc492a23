#include <iostream>

#include "semirad/cli.hpp"

int main(int argc, char** argv) { return semirad::cli::run(argc, argv, std::cout, std::cerr); }
