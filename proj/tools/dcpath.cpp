#include "dcpath/cli.hpp"

int main(int argc, char** argv) { return dcpath::runCli(argc, argv); }
