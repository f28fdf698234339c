#include <iostream>

#include "giv/commands.hpp"

int main(int argc, char** argv) { return giv::cli::run(argc, argv, std::cout, std::cerr); }
