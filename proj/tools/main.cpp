#include "cli.hpp"

int main(int argc, char** argv) { return roadaccess::cli::run_cli(argc, argv); }
