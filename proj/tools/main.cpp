#include "commands.hpp"

int main(int argc, char** argv) { return coraltda::cli::run(argc, argv); }
