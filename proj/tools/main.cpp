#include "dsmkit/cli.hpp"

int main(int argc, char** argv) { return dsmkit::cli::run_main(argc, argv); }
