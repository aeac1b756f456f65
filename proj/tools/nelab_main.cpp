#include "nelab/cli.hpp"

int main(int argc, char** argv) { return nelab::cli::cli_main(argc, argv); }
