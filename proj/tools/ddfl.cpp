#include "ddfl/cli.hpp"

int main(int argc, char** argv) { return ddfl::run_cli(argc, argv); }
