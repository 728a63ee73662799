#include "sparkcx/io.hpp"

int main(int argc, char** argv) { return sparkcx::io::run_cli(argc, argv); }
