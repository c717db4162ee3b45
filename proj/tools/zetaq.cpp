#include "zetaq/cli.hpp"

int main(int argc, char** argv) { return zetaq::cli::dispatch(argc, argv); }
