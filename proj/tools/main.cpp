#include <iostream>

#include "kickci/cli.hpp"

int main(int argc, char** argv) { return kickci::cli::run(argc, argv, std::cout, std::cerr); }
