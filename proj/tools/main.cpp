#include <iostream>

#include "benflow/cli/commands.hpp"

int main(int argc, char** argv) { return benflow::cli::run(argc, argv, std::cout, std::cerr); }
