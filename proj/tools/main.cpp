#include "cli/app.hpp"

int main(int argc, char** argv) { return fanocav::cli::run(argc, argv); }
