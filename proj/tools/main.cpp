#include "cli.hpp"

int main(int argc, char** argv) { return certreg::cli::main(argc, argv); }
