#include "perisolve/cli.hpp"

int main(int argc, char** argv) { return perisolve::cli_main(argc, argv); }
