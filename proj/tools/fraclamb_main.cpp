#include <iostream>

#include "fraclamb/cli.hpp"

int main(int argc, char** argv) { return fraclamb::cli::run(argc, argv, std::cout, std::cerr); }
