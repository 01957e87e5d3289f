#include <iostream>

#include "aniso/cli/commands.hpp"

int main(int argc, char** argv) { return aniso::cli::main_entry(argc, argv, std::cout, std::cerr); }
