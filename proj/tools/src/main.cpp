#include "iprob_cli/commands.hpp"

int main(int argc, char** argv) { return iprob::cli::run(argc, argv); }
