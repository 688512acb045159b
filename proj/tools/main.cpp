#include <iostream>

#include "experiments.hpp"

int main(int argc, char** argv) { return gspec::cli::cli_main(argc, argv, std::cout, std::cerr); }
