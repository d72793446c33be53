#include "tcp_cli.hpp"

int main(int argc, char** argv) { return tcp::cli::cli_main(argc, argv); }
