#include "finact/cli.hpp"

int main(int argc, char** argv) { return finact::run_command(std::vector<std::string>(argv, argv + argc)); }
