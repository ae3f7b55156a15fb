#include "frontalforge/cli.hpp"

int main(int argc, char** argv) { return frontalforge::cli::run(argc, argv); }
