#include "pension_mc/cli.hpp"

int main(int argc, char** argv) { return pension_mc::cli_main(argc, argv); }
