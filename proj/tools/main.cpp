#include "sfcusp/cli.hpp"

int main(int argc, char** argv) { return sfcusp::cli::run(argc, argv); }
