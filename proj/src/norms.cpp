#include "persnorm/norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "persnorm/error.hpp"

namespace persnorm {

EssentialPolicy parse_essential_policy(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "drop") return EssentialPolicy::drop;
  if (lower == "clamp") return EssentialPolicy::clamp;
  throw PolicyError("unknown essential policy '" + std::string(text) + "' (expected drop or clamp)");
}

std::string_view to_string(EssentialPolicy policy) {
  return policy == EssentialPolicy::drop ? "drop" : "clamp";
}

PersistenceNorms compute_norms(const PersistenceDiagram& diagram, EssentialPolicy policy) {
  if (policy == EssentialPolicy::clamp && !std::isfinite(diagram.max_scale)) {
    throw PolicyError("clamp policy needs a finite max_scale on the diagram");
  }
  double sum[2] = {0.0, 0.0};
  double sum_sq[2] = {0.0, 0.0};
  for (const auto& p : diagram.pairs) {
    if (p.dim < 0 || p.dim > 1) continue;
    double life = 0.0;
    if (p.essential) {
      if (policy == EssentialPolicy::drop) continue;
      life = diagram.max_scale - p.birth;
    } else {
      life = p.death - p.birth;
    }
    sum[p.dim] += life;
    sum_sq[p.dim] += life * life;
  }
  PersistenceNorms n;
  n.l01 = sum[0];
  n.l02 = std::sqrt(sum_sq[0]);
  n.l11 = sum[1];
  n.l12 = std::sqrt(sum_sq[1]);
  n.essential_policy = policy;
  return n;
}

PersistenceNorms scaled(const PersistenceNorms& norms, double factor) {
  auto out = norms;
  out.l01 *= factor;
  out.l02 *= factor;
  out.l11 *= factor;
  out.l12 *= factor;
  return out;
}

DatasetReport dataset_report(const PointCloud& cloud, const NormsConfig& config) {
  DatasetReport r;
  r.label = cloud.label();
  try {
    r.stats = summarize(cloud);
    r.norms = compute_norms(compute_diagram(cloud, config.rips), config.essential_policy);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<DatasetReport> norms_table(std::span<const PointCloud> clouds, const NormsConfig& config) {
  std::vector<DatasetReport> out(clouds.size());
  unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(clouds.size(), 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < clouds.size(); ++i) out[i] = dataset_report(clouds[i], config);
    return out;
  }
  // Static striping keeps the output order independent of scheduling.
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < clouds.size(); i += workers) out[i] = dataset_report(clouds[i], config);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace persnorm
