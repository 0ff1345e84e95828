#include "fmoe/cli.hpp"

int main(int argc, char** argv) { return fmoe::cli_main(argc, argv); }
