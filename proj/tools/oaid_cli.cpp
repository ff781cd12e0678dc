// Command line front end. Talks to the engine exclusively through the C
// interface in oaid.h. Exit codes: 0 success, 1 exact verification failure,
// 2 usage error (bad flags, unreadable files, caps).

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oaid.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

// RAII for strings handed out by the C interface.
struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { oaid_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

[[noreturn]] void fail_usage(const std::string& message) {
  std::cerr << "oaid: " << message << "\n";
  std::exit(kExitUsage);
}

void require_ok(int status, const std::string& context) {
  if (status == OAID_OK) return;
  fail_usage(context + ": " + oaid_status_message(status));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_usage("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail_usage("cannot write " + out_path);
  out << text;
  if (!out) fail_usage("cannot write " + out_path);
}

struct ModelHandle {
  oaid_model* ptr = nullptr;
  ~ModelHandle() { oaid_model_free(ptr); }
};

struct CatalogHandle {
  oaid_catalog* ptr = nullptr;
  ~CatalogHandle() { oaid_catalog_free(ptr); }
};

void load_model(const std::string& path, ModelHandle* model) {
  require_ok(oaid_model_from_json(read_file(path).c_str(), &model->ptr),
             "model " + path);
}

std::pair<int, int> parse_pair(const std::string& text) {
  int t_prime = 0, t = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> t_prime >> comma >> t) || comma != ',' || !(in >> std::ws).eof())
    fail_usage("--pair expects \"t',t\" (e.g. 1,0)");
  return {t_prime, t};
}

std::vector<int> parse_c(const std::string& text) {
  std::vector<int> c;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item != "0" && item != "1") fail_usage("--c expects 0/1 entries");
    c.push_back(item == "1" ? 1 : 0);
  }
  if (c.empty()) fail_usage("--c expects at least one entry");
  return c;
}

// Shared flag set for the enumeration-driven subcommands.
struct EnumArgs {
  int treatments = 2;
  int instruments = 2;
  std::string dedup = "sequential";
  int threads = 1;
  std::uint64_t cap = 0;
  std::string checkpoint_path;
  std::uint64_t checkpoint_every = 0;
  std::string resume_path;
};

void add_enum_flags(CLI::App* cmd, EnumArgs* args, bool with_checkpointing) {
  cmd->add_option("-T,--treatments", args->treatments, "treatment values (2..4)");
  cmd->add_option("-Z,--instruments", args->instruments, "instrument values (2..4)");
  cmd->add_option("--dedup", args->dedup, "organization mode")
      ->check(CLI::IsMember({"sequential", "joint"}));
  cmd->add_option("--threads", args->threads, "worker thread count")
      ->envname("OAID_THREADS");
  cmd->add_option("--cap", args->cap, "candidate cap for the grid scan");
  if (with_checkpointing) {
    cmd->add_option("--checkpoint", args->checkpoint_path,
                    "write scan checkpoints to this path");
    cmd->add_option("--checkpoint-every", args->checkpoint_every,
                    "candidates between checkpoints");
    cmd->add_option("--resume", args->resume_path,
                    "resume the scan from this checkpoint file");
  }
}

void run_enumerate(const EnumArgs& args, CatalogHandle* catalog) {
  oaid_enumerate_options opts{};
  opts.treatments = args.treatments;
  opts.instruments = args.instruments;
  opts.dedup = args.dedup.c_str();
  opts.threads = args.threads;
  opts.candidate_cap = args.cap;
  opts.checkpoint_path =
      args.checkpoint_path.empty() ? nullptr : args.checkpoint_path.c_str();
  opts.checkpoint_every = args.checkpoint_every;
  opts.resume_path =
      args.resume_path.empty() ? nullptr : args.resume_path.c_str();
  require_ok(oaid_enumerate(&opts, &catalog->ptr), "enumerate");
}

std::string spectrum_text(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  std::ostringstream out;
  out << "D_" << j["n"].get<int>() << " = {";
  bool first = true;
  for (const auto& d : j["determinants"]) {
    if (!first) out << ", ";
    out << d.get<std::int64_t>();
    first = false;
  }
  out << "}\nC_" << j["n"].get<int>() << " = {";
  first = true;
  for (const auto& c : j["coefficients"]) {
    if (!first) out << ", ";
    out << c.get<std::string>();
    first = false;
  }
  out << "}\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outcome-agnostic identification engine"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string format = "text";
  std::string out_path;
  std::string model_path;
  std::string pair_text = "1,0";
  std::string c_text;
  int t_label = 0;
  std::uint64_t seed = 1;
  std::uint64_t draws = 100;
  int spectrum_n = 3;
  std::string verify_file;
  EnumArgs enum_args;
  EnumArgs count_args;
  EnumArgs verify_args;

  auto* enumerate = app.add_subcommand(
      "enumerate", "enumerate the full catalog for a configuration");
  add_enum_flags(enumerate, &enum_args, true);
  enumerate->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "latex", "json"}));
  enumerate->add_option("--out", out_path, "write output here");

  auto* counts = app.add_subcommand(
      "counts", "enumerate and print the model/collection counts");
  add_enum_flags(counts, &count_args, true);
  counts->add_option("--out", out_path, "write output here");

  auto* check = app.add_subcommand(
      "check", "identified collections of one model for one ordered pair");
  check->add_option("--model", model_path, "model JSON file")->required();
  check->add_option("--pair", pair_text, "ordered treatment pair t',t");
  check->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "latex", "json"}));
  check->add_option("--out", out_path, "write output here");

  auto* catalog = app.add_subcommand(
      "catalog", "identified collections of one model, all ordered pairs");
  catalog->add_option("--model", model_path, "model JSON file")->required();
  catalog->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "latex", "json"}));
  catalog->add_option("--out", out_path, "write output here");

  auto* verify = app.add_subcommand(
      "verify", "exact verification of every collection in a catalog");
  verify->add_option("catalog", verify_file,
                     "catalog JSON file (default: enumerate -T/-Z first)");
  add_enum_flags(verify, &verify_args, false);
  verify->add_option("--draws", draws, "seeded populations per collection");
  verify->add_option("--seed", seed, "seed for the population draws");
  verify->add_option("--out", out_path, "write the JSON report here");

  auto* witness = app.add_subcommand(
      "witness", "non-identification witness for a contrast");
  witness->add_option("--model", model_path, "model JSON file")->required();
  witness->add_option("--t", t_label, "treatment label")->required();
  witness->add_option("--c", c_text, "0/1 contrast, comma separated")
      ->required();
  witness->add_option("--seed", seed, "seed for the base population");
  witness->add_option("--out", out_path, "write output here");

  auto* spectrum = app.add_subcommand(
      "spectrum", "determinant spectrum D_n and coefficient set C_n");
  spectrum->add_option("--n", spectrum_n, "matrix size n (1..6)")->required();
  spectrum->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  spectrum->add_option("--out", out_path, "write output here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (enumerate->parsed()) {
    CatalogHandle cat;
    run_enumerate(enum_args, &cat);
    OwnedString text;
    require_ok(oaid_catalog_render(cat.ptr, format.c_str(), &text.ptr),
               "render");
    write_output(out_path, text.str());
    return kExitOk;
  }

  if (counts->parsed()) {
    CatalogHandle cat;
    run_enumerate(count_args, &cat);
    std::uint64_t models = 0, collections = 0;
    require_ok(oaid_catalog_counts(cat.ptr, &models, &collections), "counts");
    std::ostringstream out;
    out << "models=" << models << " collections=" << collections << "\n";
    write_output(out_path, out.str());
    return kExitOk;
  }

  if (check->parsed()) {
    ModelHandle model;
    load_model(model_path, &model);
    const auto [t_prime, t] = parse_pair(pair_text);
    OwnedString text;
    require_ok(
        oaid_check_pair(model.ptr, t_prime, t, format.c_str(), &text.ptr),
        "check");
    write_output(out_path, text.str());
    return kExitOk;
  }

  if (catalog->parsed()) {
    ModelHandle model;
    load_model(model_path, &model);
    OwnedString text;
    require_ok(oaid_model_catalog(model.ptr, format.c_str(), &text.ptr),
               "catalog");
    write_output(out_path, text.str());
    return kExitOk;
  }

  if (verify->parsed()) {
    CatalogHandle cat;
    if (!verify_file.empty()) {
      require_ok(
          oaid_catalog_from_json(read_file(verify_file).c_str(), &cat.ptr),
          "catalog " + verify_file);
    } else {
      run_enumerate(verify_args, &cat);
    }
    OwnedString report;
    const int status =
        oaid_verify_catalog(cat.ptr, draws, seed, &report.ptr);
    if (status != OAID_OK && status != OAID_VERIFY_FAIL)
      require_ok(status, "verify");
    write_output(out_path, report.str());
    return status == OAID_OK ? kExitOk : kExitVerifyFail;
  }

  if (witness->parsed()) {
    ModelHandle model;
    load_model(model_path, &model);
    const auto c = parse_c(c_text);
    OwnedString text;
    require_ok(oaid_witness(model.ptr, t_label, c.data(), c.size(), seed,
                            &text.ptr),
               "witness");
    write_output(out_path, text.str());
    return kExitOk;
  }

  if (spectrum->parsed()) {
    OwnedString text;
    require_ok(oaid_spectrum(spectrum_n, &text.ptr), "spectrum");
    write_output(out_path,
                 format == "json" ? text.str() : spectrum_text(text.str()));
    return kExitOk;
  }

  return kExitUsage;
}
