#include "fbd/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "fbd/errors.hpp"
#include "fbd/rng.hpp"
#include "fbd/text.hpp"

namespace fbd {

namespace {

bool is_known_estimator(const std::string& id) {
  return id == estimator_id::kMle || id == estimator_id::kBayesParam || id == estimator_id::kRestrictedFisher ||
         id == estimator_id::kRestrictedLebesgue || id == estimator_id::kUnrestricted;
}

struct Accumulator {
  double sum = 0.0;
  int ok = 0;
  int failed = 0;

  template <typename Fn>
  void add(Fn&& error_fn) {
    try {
      const double e = error_fn();
      if (!std::isfinite(e)) {
        ++failed;
        return;
      }
      sum += e;
      ++ok;
    } catch (const Error&) {
      ++failed;
    }
  }

  SimRecord record(int n, std::string id) const {
    const double mean = ok > 0 ? sum / ok : std::numeric_limits<double>::quiet_NaN();
    return SimRecord{n, std::move(id), mean, ok, failed};
  }
};

}  // namespace

void SimConfig::validate() const {
  if (runs < 1) throw InvalidArgument("simulation needs runs >= 1");
  if (n_values.empty()) throw InvalidArgument("simulation needs at least one n value");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw InvalidArgument("n values must be positive");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw InvalidArgument("n values must be strictly ascending");
  }
  if (!(theta_true > 0.0)) throw InvalidArgument("theta must be positive");
  if (estimators.empty()) throw InvalidArgument("simulation needs at least one estimator");
  for (const auto& id : estimators) {
    if (!is_known_estimator(id)) throw InvalidArgument("unknown estimator '" + id + "'");
    if (id == estimator_id::kBayesParam && prior_grid.empty()) {
      throw InvalidArgument("bayes_param needs a nonempty prior grid");
    }
  }
  for (const auto& p : prior_grid) {
    if (!(p.t1 > 0.0) || !(p.t2 > 0.0)) throw InvalidArgument("prior parameters must be positive");
  }
}

std::string prior_label(const GammaPrior& prior) {
  std::ostringstream os;
  os << estimator_id::kBayesParam << '[' << prior.t1 << ':' << prior.t2 << ']';
  return os.str();
}

std::vector<double> draw_sample(std::uint64_t seed, int n, int run, double theta) {
  CounterRng rng(CounterRng::derive_key(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(run)));
  std::vector<double> points(static_cast<std::size_t>(n));
  for (double& x : points) x = theta * rng.uniform();
  return points;
}

std::vector<SimRecord> run_simulation(const SimConfig& cfg) {
  cfg.validate();
  auto wants = [&](const char* id) { return std::find(cfg.estimators.begin(), cfg.estimators.end(), id) != cfg.estimators.end(); };
  const bool want_mle = wants(estimator_id::kMle);
  const bool want_bayes = wants(estimator_id::kBayesParam);
  const bool want_fisher = wants(estimator_id::kRestrictedFisher);
  const bool want_lebesgue = wants(estimator_id::kRestrictedLebesgue);
  const bool want_unrestricted = wants(estimator_id::kUnrestricted);
  const double theta = cfg.theta_true;

  std::vector<SimRecord> records;
  for (int n : cfg.n_values) {
    Accumulator mle_acc, fisher_acc, lebesgue_acc, unrestricted_acc;
    std::vector<Accumulator> prior_acc(cfg.prior_grid.size());

    for (int run = 0; run < cfg.runs; ++run) {
      const Sample sample(draw_sample(cfg.seed, n, run, theta));
      if (want_mle) mle_acc.add([&] { return uniform_sq_error(mle(sample).scale, theta); });
      if (want_bayes) {
        for (std::size_t k = 0; k < cfg.prior_grid.size(); ++k) {
          prior_acc[k].add([&] { return uniform_sq_error(bayes_parameter(sample, cfg.prior_grid[k]), theta); });
        }
      }
      if (want_fisher) {
        fisher_acc.add([&] { return uniform_sq_error(bayes_uniform_restricted(sample, Metric::Fisher).scale, theta); });
      }
      if (want_lebesgue) {
        lebesgue_acc.add(
            [&] { return uniform_sq_error(bayes_uniform_restricted(sample, Metric::Lebesgue).scale, theta); });
      }
      if (want_unrestricted) unrestricted_acc.add([&] { return unrestricted_sq_error(bayes_unrestricted(sample), theta); });
    }

    if (want_mle) records.push_back(mle_acc.record(n, estimator_id::kMle));
    if (want_fisher) records.push_back(fisher_acc.record(n, estimator_id::kRestrictedFisher));
    if (want_lebesgue) records.push_back(lebesgue_acc.record(n, estimator_id::kRestrictedLebesgue));
    if (want_unrestricted) records.push_back(unrestricted_acc.record(n, estimator_id::kUnrestricted));
    if (want_bayes) {
      std::size_t best = 0;
      for (std::size_t k = 0; k < prior_acc.size(); ++k) {
        SimRecord r = prior_acc[k].record(n, prior_label(cfg.prior_grid[k]));
        const SimRecord current_best = prior_acc[best].record(n, "");
        if (r.runs > 0 && (current_best.runs == 0 || r.mean_sq_error < current_best.mean_sq_error)) best = k;
        records.push_back(std::move(r));
      }
      records.push_back(prior_acc[best].record(n, estimator_id::kBayesParam));
    }
  }
  std::sort(records.begin(), records.end(), [](const SimRecord& a, const SimRecord& b) {
    return a.n != b.n ? a.n < b.n : a.estimator < b.estimator;
  });
  return records;
}

std::string format_csv(const std::vector<SimRecord>& records) {
  std::vector<const SimRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const SimRecord* a, const SimRecord* b) {
    return a->n != b->n ? a->n < b->n : a->estimator < b->estimator;
  });
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "n,estimator,mean_sq_error,runs\n" << std::setprecision(17);
  for (const SimRecord* r : sorted) os << r->n << ',' << r->estimator << ',' << r->mean_sq_error << ',' << r->runs << '\n';
  return os.str();
}

void write_csv(const std::vector<SimRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << format_csv(records);
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<SimRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "n,estimator,mean_sq_error,runs") {
    throw InvalidArgument("'" + path.string() + "': missing CSV header");
  }
  std::vector<SimRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw InvalidArgument("'" + path.string() + "' line " + std::to_string(line_no) + ": expected 4 fields");
    }
    SimRecord r;
    r.n = parse_int(fields[0]);
    r.estimator = std::string(trim(fields[1]));
    r.mean_sq_error = parse_double(fields[2]);
    r.runs = parse_int(fields[3]);
    records.push_back(std::move(r));
  }
  return records;
}

SimConfig parse_config(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string_view value = trim(body.substr(eq + 1));
    if (key == "runs") {
      cfg.runs = parse_int(value);
    } else if (key == "n_values") {
      cfg.n_values.clear();
      for (auto item : split(value, ',')) cfg.n_values.push_back(parse_int(item));
    } else if (key == "theta" || key == "theta_true") {
      cfg.theta_true = parse_double(value);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value);
    } else if (key == "estimators") {
      cfg.estimators.clear();
      for (auto item : split(value, ',')) cfg.estimators.emplace_back(trim(item));
    } else if (key == "priors" || key == "prior_grid") {
      cfg.prior_grid.clear();
      for (auto item : split(value, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw InvalidArgument("config priors: expected t1:t2, got '" + std::string(item) + "'");
        cfg.prior_grid.push_back({parse_double(parts[0]), parse_double(parts[1])});
      }
    } else {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace fbd
