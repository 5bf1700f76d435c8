#include "gaudin/cli.hpp"

int main(int argc, char** argv) { return gaudin::run_cli(argc, argv); }
