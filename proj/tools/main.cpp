#include "qfi/cli.hpp"

int main(int argc, char** argv) { return qfi::run_cli(argc, argv); }
