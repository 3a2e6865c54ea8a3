#include "ivgreen/cli.hpp"

int main(int argc, char** argv) { return ivgreen::cli::main(argc, argv); }
