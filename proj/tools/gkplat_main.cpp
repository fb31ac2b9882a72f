#include "gkplat/cli.hpp"

int main(int argc, char** argv) { return gkplat::cli::run(argc, argv); }
