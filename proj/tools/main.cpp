#include "commands.hpp"

int main(int argc, char** argv) { return jmg::cli::run(argc, argv); }
