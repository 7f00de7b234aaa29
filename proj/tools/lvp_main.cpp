#include "lvp/cli.hpp"

int main(int argc, char** argv) { return lvp::cli::run_cli(argc, argv); }
