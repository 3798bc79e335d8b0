#include "driver.hpp"

int main(int argc, char** argv) { return schedfree::cli_main(argc, argv); }
