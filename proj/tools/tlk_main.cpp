#include <iostream>

#include "tlk/cli.hpp"

int main(int argc, char** argv) { return tlk::cli::run(argc, argv, std::cout, std::cerr); }
