#include "treepack/cli.hpp"

int main(int argc, char** argv) { return treepack::dispatch(argc, argv); }
