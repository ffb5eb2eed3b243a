#include "scengen/cli.hpp"

int main(int argc, char** argv) { return scengen::run_cli(argc, argv); }
