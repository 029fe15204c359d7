#include "divmatch/cli.hpp"

int main(int argc, char** argv) { return divmatch::cli::run(argc, argv); }
