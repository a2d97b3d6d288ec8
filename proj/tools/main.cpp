#include "sepspace/cli.hpp"

int main(int argc, char** argv) { return sepspace::run_cli(argc, argv); }
