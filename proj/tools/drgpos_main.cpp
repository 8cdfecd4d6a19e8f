#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return drg::cli::run(argc, argv, std::cout, std::cerr); }
