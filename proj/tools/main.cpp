#include <iostream>

#include "patmine/cli.hpp"

int main(int argc, char** argv) { return patmine::cli::run(argc, argv, std::cout, std::cerr); }
