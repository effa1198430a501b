#include "wman/cli.hpp"

int main(int argc, char** argv) { return wman::cli_main(argc, argv); }
