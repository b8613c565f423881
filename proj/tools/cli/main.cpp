#include "commands.hpp"

int main(int argc, char** argv) { return betaens::cli::main_entry(argc, argv); }
