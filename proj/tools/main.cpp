#include "molq/cli.hpp"

int main(int argc, char** argv) { return molq::run_cli(argc, argv); }
