#include "commands.hpp"

int main(int argc, char** argv) { return dtnembed::cli::run(argc, argv); }
