#include "lunelab/cli.hpp"

int main(int argc, char** argv) { return lunelab::run_cli(argc, argv); }
