#include "varberg/cli.hpp"

int main(int argc, char** argv) { return varberg::cli_main(argc, argv); }
