#include "tmkit/cli.hpp"

int main(int argc, char** argv) { return tmkit::cli::run(argc, argv); }
