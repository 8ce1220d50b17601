#include "oracle_lab/cli.hpp"

int main(int argc, char** argv) { return oracle_lab::cli_main(argc, argv); }
