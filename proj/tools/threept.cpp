#include "threept/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return threept::cli::run(argc, argv, std::cout, std::cerr); }
