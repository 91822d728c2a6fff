#include "steinbounds_cli/cli.hpp"

int main(int argc, char** argv) { return steinbounds::cli::run(argc, argv); }
