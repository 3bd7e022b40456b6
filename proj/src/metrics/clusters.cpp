#include "brownsim/metrics/clusters.hpp"

#include <algorithm>

#include <boost/pending/disjoint_sets.hpp>

#include "brownsim/forces/neighbors.hpp"

namespace brownsim {

ClusterStats contact_clusters(std::span<const Vec2> pos, const PeriodicBox& box, Real contact) {
  const std::size_t n = pos.size();
  ClusterStats out;
  if (n == 0) return out;
  boost::disjoint_sets_with_storage<> sets(n);
  const VerletList contacts = build_verlet(pos, box, contact, 0);
  const Real c2 = contact * contact;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t j : contacts.upper(i)) {
      // The list is inclusive at the radius; contact is strict.
      if (norm2(box.min_image(pos[i], pos[j])) < c2) sets.union_set(i, std::size_t{j});
    }
  }
  out.labels.assign(n, 0);
  std::vector<std::size_t> root_label(n, n);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = sets.find_set(i);
    if (root_label[r] == n) {
      root_label[r] = sizes.size();
      sizes.push_back(0);
    }
    out.labels[i] = static_cast<std::uint32_t>(root_label[r]);
    ++sizes[root_label[r]];
  }
  out.count = sizes.size();
  out.largest = *std::max_element(sizes.begin(), sizes.end());
  out.largest_fraction = double(out.largest) / double(n);
  out.mean_size = double(n) / double(out.count);
  double s2 = 0;
  for (std::size_t s : sizes) s2 += double(s) * double(s);
  out.weighted_mean_size = s2 / double(n);
  return out;
}

}  // namespace brownsim
