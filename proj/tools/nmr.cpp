#include <iostream>

#include "nmr/cli.hpp"

int main(int argc, char** argv) { return nmr::cli::run(argc, argv, std::cout, std::cerr); }
