#include "crseq_cli.hpp"

int main(int argc, char** argv) { return crseq::cli::run(argc, argv); }
