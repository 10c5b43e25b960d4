#include "persnorm/cli.hpp"

int main(int argc, char** argv) { return persnorm::cli_main(argc, argv); }
