#include <iostream>

#include "trustrecon/cli.hpp"

int main(int argc, char** argv) { return trustrecon::cli::run(argc, argv, std::cout, std::cerr); }
