// Regenerates the bundled synthetic mini-corpus (data/mini_corpus.csv).

#include <CLI11.hpp>

#include <iostream>

#include "claimforge/minicorpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic claims corpus generator"};
  std::string out = "mini_corpus.csv";
  claimforge::MiniCorpusOptions options;
  app.add_option("--out", out, "output CSV path");
  app.add_option("--count", options.count, "number of claims");
  app.add_option("--seed", options.seed, "generator seed");
  app.add_option("--min-elements", options.min_elements, "minimum body elements per claim");
  app.add_option("--max-elements", options.max_elements, "maximum body elements per claim");
  CLI11_PARSE(app, argc, argv);
  try {
    const auto records = claimforge::make_mini_corpus(options);
    claimforge::write_corpus_csv(out, records);
    std::cout << "wrote " << records.size() << " claims -> " << out << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "mkcorpus: " << e.what() << "\n";
    return 1;
  }
}
