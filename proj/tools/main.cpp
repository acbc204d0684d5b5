#include "entloc/cli.hpp"

int main(int argc, char** argv) { return entloc::cli::run(argc, argv); }
