#include "mesonet/cli.hpp"

int main(int argc, char** argv) { return mesonet::run_cli(argc, argv); }
