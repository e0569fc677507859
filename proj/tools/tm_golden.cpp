// Regenerates corpus/golden/ from the .tm sources.
// usage: tm_golden CORPUS_DIR
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tmkit/corpus.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: tm_golden CORPUS_DIR\n";
    return 2;
  }
  namespace fs = std::filesystem;
  const fs::path dir = argv[1];
  fs::create_directories(dir / "golden");
  for (const auto& name : tmkit::all_fixture_names()) {
    std::ifstream in(dir / (name + ".tm"), std::ios::binary);
    if (!in) {
      std::cerr << "missing " << name << ".tm\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    for (const auto& [kind, text] : tmkit::compute_goldens(ss.str())) {
      std::ofstream(dir / "golden" / (name + "." + kind), std::ios::binary) << text;
    }
  }
  return 0;
}
