#include "so4cli_app.hpp"

int main(int argc, char** argv) { return so4::cli::run(argc, argv); }
