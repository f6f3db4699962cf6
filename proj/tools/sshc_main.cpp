#include "sshc/cli.hpp"

int main(int argc, char** argv) { return sshc::cli::run_cli(argc, argv); }
