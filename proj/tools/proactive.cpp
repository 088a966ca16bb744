#include <iostream>

#include "proactive/cli/commands.hpp"

int main(int argc, char** argv) { return proactive::cli::main(argc, argv, std::cin, std::cout, std::cerr); }
