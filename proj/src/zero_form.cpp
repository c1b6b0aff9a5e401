#include "slicelab/zero_form.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "slicelab/errors.hpp"

namespace slicelab {

namespace {

// (sorted axis set, one term index per axis)
using LevelKey = std::pair<std::vector<int>, std::vector<int>>;

std::string axis_set_label(const std::vector<int>& axes) {
  std::string out = "{";
  for (size_t t = 0; t < axes.size(); ++t) {
    if (t) out += ',';
    out += std::to_string(axes[t] + 1);
  }
  return out + "}";
}

std::string key_label(const ZeroFormKey& key) {
  std::string out = "J=" + axis_set_label(key.axes) + " i=(";
  for (size_t t = 0; t < key.indices.size(); ++t) {
    if (t) out += ',';
    out += std::to_string(key.indices[t] + 1);
  }
  return out + ") slot=" + std::to_string(key.axis + 1);
}

/* Product of the picked one-variable functions of J \ {slot} with the
   entry value on the remaining axes, as a tensor over [d] \ {slot}. */
Tensor slot_contribution(const SliceDecomposition& dec, const ZeroFormKey& key,
                         const Tensor& value) {
  std::vector<int> slot{key.axis};
  std::vector<int> target = complement_axes(dec.order(), slot);
  std::vector<int> value_axes = complement_axes(dec.order(), key.axes);
  std::vector<AxisPlacedTensor> parts;
  for (size_t t = 0; t < key.axes.size(); ++t) {
    if (key.axes[t] == key.axis) continue;
    parts.push_back({vec_to_tensor(dec.a(key.axes[t], key.indices[t])),
                     {position_in(target, key.axes[t])}});
  }
  std::vector<int> local;
  for (int axis : value_axes) local.push_back(position_in(target, axis));
  parts.push_back({value, std::move(local)});
  return outer_embed(parts, dims_at(dec.dims, target), dec.field);
}

bool key_is_well_formed(const SliceDecomposition& dec,
                        const ZeroFormCertificate& cert,
                        const ZeroFormKey& key, const Tensor& value,
                        std::string* why) {
  int d = dec.order();
  if (key.axes.size() < 2 || !std::is_sorted(key.axes.begin(), key.axes.end(),
                                             std::less_equal<int>())) {
    *why = "axis set must list at least two distinct axes in order";
    return false;
  }
  if (key.axes.front() < 0 || key.axes.back() >= d) {
    *why = "axis out of range";
    return false;
  }
  if (!std::binary_search(key.axes.begin(), key.axes.end(), key.axis)) {
    *why = "slot axis is not in the axis set";
    return false;
  }
  if (key.indices.size() != key.axes.size()) {
    *why = "one term index per axis required";
    return false;
  }
  for (size_t t = 0; t < key.axes.size(); ++t) {
    int limit = cert.shape[size_t(key.axes[t])];
    if (key.indices[t] < 0 || key.indices[t] >= limit) {
      *why = "term index out of range";
      return false;
    }
  }
  if (!(value.field() == dec.field)) {
    *why = "value field mismatch";
    return false;
  }
  std::vector<int> value_axes = complement_axes(d, key.axes);
  if (value.dims() != dims_at(dec.dims, value_axes)) {
    *why = "value dimensions do not match the complement axes";
    return false;
  }
  return true;
}

}  // namespace

ValidationReport verify_zero_form(const SliceDecomposition& dec,
                                  const ZeroFormCertificate& cert) {
  ValidationReport report;
  if (!(cert.field == dec.field)) report.violations.push_back("field mismatch");
  if (cert.dims != dec.dims)
    report.violations.push_back("dimension mismatch");
  if (cert.shape != dec.shape())
    report.violations.push_back("term count mismatch");
  if (!report.ok()) return report;

  std::vector<const std::pair<const ZeroFormKey, Tensor>*> usable;
  for (const auto& entry : cert.entries) {
    std::string why;
    if (key_is_well_formed(dec, cert, entry.first, entry.second, &why)) {
      usable.push_back(&entry);
    } else {
      report.violations.push_back(key_label(entry.first) + ": " + why);
    }
  }

  int d = dec.order();
  for (int j = 0; j < d; ++j) {
    std::vector<int> jset{j};
    std::vector<int> rest_dims = dims_at(dec.dims, complement_axes(d, jset));
    std::vector<int> shape = dec.shape();
    for (int i = 0; i < shape[size_t(j)]; ++i) {
      Tensor sum(dec.field, rest_dims);
      for (const auto* entry : usable) {
        const ZeroFormKey& key = entry->first;
        if (key.axis != j) continue;
        if (key.indices[size_t(position_in(key.axes, j))] != i) continue;
        sum = add(sum, slot_contribution(dec, key, entry->second));
      }
      if (!(sum == dec.b(j, i)))
        report.violations.push_back(
            "complementary function of axis " + std::to_string(j + 1) +
            " term " + std::to_string(i + 1) +
            " is not the sum of its slots");
    }
  }

  std::map<LevelKey, Tensor> layer_sums;
  for (const auto* entry : usable) {
    LevelKey lk{entry->first.axes, entry->first.indices};
    auto [it, fresh] = layer_sums.try_emplace(lk, entry->second);
    if (!fresh) it->second = add(it->second, entry->second);
  }
  for (const auto& [lk, sum] : layer_sums) {
    if (sum.is_zero()) continue;
    ZeroFormKey probe{lk.first, lk.second, lk.first.front()};
    report.violations.push_back("slots of " + key_label(probe) +
                                " do not sum to zero");
  }
  return report;
}

namespace {

/* Shared state of the splitting run: the decomposition, the canonical
   duals of every axis family, and the growing certificate. */
struct Splitter {
  const SliceDecomposition& dec;
  std::vector<std::vector<Vec>> duals;
  std::map<ZeroFormKey, Tensor> entries;

  explicit Splitter(const SliceDecomposition& d) : dec(d) {
    std::vector<int> shape = dec.shape();
    for (int j = 0; j < dec.order(); ++j) {
      std::vector<Vec> family;
      for (int i = 0; i < shape[size_t(j)]; ++i) family.push_back(dec.a(j, i));
      if (family.empty()) {
        duals.emplace_back();
        continue;
      }
      try {
        duals.push_back(dual_family(family).duals);
      } catch (const LinearlyDependentInput&) {
        throw DependentFamilies("one-variable functions of axis " +
                                std::to_string(j + 1) + " are dependent");
      }
    }
  }

  void add_entry(ZeroFormKey key, const Tensor& value) {
    auto [it, fresh] = entries.try_emplace(std::move(key), value);
    if (!fresh) it->second = add(it->second, value);
  }

  /* Contracts the source value with the duals picked by `target` on the
     axes the target covers but the source does not, then multiplies in
     the source's own one-variable functions on the axes past the bucket
     axis.  Returns minus the result, living on the complement of
     target's axes plus the bucket axis. */
  Tensor expansion_term(const LevelKey& target, const LevelKey& source,
                        const Tensor& source_value, int bucket_axis) {
    const auto& [taxes, tidx] = target;
    const auto& [saxes, sidx] = source;
    std::vector<int> contract_axes;
    std::set_difference(taxes.begin(), taxes.end(), saxes.begin(), saxes.end(),
                        std::back_inserter(contract_axes));

    Tensor contracted = source_value;
    if (!contract_axes.empty()) {
      Tensor dual_prod = vec_to_tensor(
          duals[size_t(contract_axes[0])]
               [size_t(tidx[size_t(position_in(taxes, contract_axes[0]))])]);
      for (size_t t = 1; t < contract_axes.size(); ++t)
        dual_prod = outer(
            dual_prod,
            vec_to_tensor(duals[size_t(contract_axes[t])][size_t(
                tidx[size_t(position_in(taxes, contract_axes[t]))])]));
      std::vector<int> source_rest = complement_axes(dec.order(), saxes);
      std::vector<int> local;
      for (int axis : contract_axes)
        local.push_back(position_in(source_rest, axis));
      contracted = contract(dual_prod, local, source_value);
    }

    std::vector<int> grown = taxes;
    grown.insert(std::lower_bound(grown.begin(), grown.end(), bucket_axis),
                 bucket_axis);
    std::vector<int> result_axes = complement_axes(dec.order(), grown);

    std::vector<AxisPlacedTensor> parts;
    for (size_t t = 0; t < saxes.size(); ++t) {
      if (std::binary_search(taxes.begin(), taxes.end(), saxes[t])) continue;
      if (saxes[t] == bucket_axis) continue;
      parts.push_back({vec_to_tensor(dec.a(saxes[t], sidx[t])),
                       {position_in(result_axes, saxes[t])}});
    }
    std::vector<int> contracted_axes;
    {
      std::vector<int> united = grown;
      for (int axis : saxes)
        united.insert(std::lower_bound(united.begin(), united.end(), axis),
                      axis);
      united.erase(std::unique(united.begin(), united.end()), united.end());
      contracted_axes = complement_axes(dec.order(), united);
    }
    std::vector<int> local;
    for (int axis : contracted_axes)
      local.push_back(position_in(result_axes, axis));
    parts.push_back({contracted, std::move(local)});
    return negate(
        outer_embed(parts, dims_at(dec.dims, result_axes), dec.field));
  }
};

bool indices_agree_on_overlap(const LevelKey& a, const LevelKey& b) {
  size_t s = 0;
  for (size_t t = 0; t < a.first.size(); ++t) {
    while (s < b.first.size() && b.first[s] < a.first[t]) ++s;
    if (s < b.first.size() && b.first[s] == a.first[t] &&
        b.second[s] != a.second[t])
      return false;
  }
  return true;
}

}  // namespace

ZeroFormCertificate extract_zero_form(const SliceDecomposition& dec) {
  int d = dec.order();
  if (d < 3) throw Error("zero form extraction needs order >= 3");
  if (!assemble(dec).is_zero())
    throw NotZero("decomposition does not assemble to the zero tensor");

  Splitter splitter(dec);
  std::vector<int> shape = dec.shape();

  std::map<LevelKey, Tensor> level;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < shape[size_t(j)]; ++i)
      if (!dec.b(j, i).is_zero())
        level.try_emplace(LevelKey{{j}, {i}}, dec.b(j, i));

  for (int m = 1; m < d && !level.empty(); ++m) {
    std::map<LevelKey, Tensor> next;
    for (const auto& [target, target_value] : level) {
      (void)target_value;
      for (const auto& [source, source_value] : level) {
        if (source.first == target.first) continue;
        if (!indices_agree_on_overlap(target, source)) continue;
        std::vector<int> fresh;
        std::set_difference(source.first.begin(), source.first.end(),
                            target.first.begin(), target.first.end(),
                            std::back_inserter(fresh));
        int bucket_axis = fresh.front();
        Tensor term = splitter.expansion_term(target, source, source_value,
                                              bucket_axis);
        if (term.is_zero()) continue;

        LevelKey grown = target;
        auto pos = std::lower_bound(grown.first.begin(), grown.first.end(),
                                    bucket_axis);
        int bucket_index =
            source.second[size_t(position_in(source.first, bucket_axis))];
        grown.second.insert(
            grown.second.begin() + (pos - grown.first.begin()), bucket_index);
        grown.first.insert(pos, bucket_axis);

        auto [it, inserted] = next.try_emplace(grown, term);
        if (!inserted) it->second = add(it->second, term);
        splitter.add_entry(
            ZeroFormKey{grown.first, grown.second, target.first.front()},
            term);
      }
    }

    for (auto& [key, value] : next) {
      if (value.is_zero()) continue;
      if (static_cast<int>(key.first.size()) == d)
        throw InternalContradiction(
            "splitting left a nonzero full-axis residual");
      splitter.add_entry(ZeroFormKey{key.first, key.second, key.first.front()},
                         negate(value));
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    level = std::move(next);
  }

  if (!level.empty())
    throw InternalContradiction("splitting terminated with residuals left");

  ZeroFormCertificate cert(dec.field, dec.dims, shape);
  for (auto& [key, value] : splitter.entries)
    if (!value.is_zero()) cert.entries.emplace(key, std::move(value));
  return cert;
}

ZeroFormCertificate extract_zero_form_order3(const SliceDecomposition& dec) {
  if (dec.order() != 3) throw Error("this path is the order-3 special case");
  if (!assemble(dec).is_zero())
    throw NotZero("decomposition does not assemble to the zero tensor");

  Splitter splitter(dec);
  const std::vector<int>& dims = dec.dims;
  std::vector<int> shape = dec.shape();
  int r1 = shape[0], r2 = shape[1], r3 = shape[2];
  const FieldSpec& F = dec.field;

  auto dual = [&](int axis, int i) { return splitter.duals[size_t(axis)][size_t(i)]; };
  auto contract_axis = [&](const Vec& v, int local_axis, const Tensor& t) {
    std::vector<int> axes{local_axis};
    return contract(vec_to_tensor(v), axes, t);
  };

  /* Expansions of the three families of complementary functions.  The
     names follow the two-letter pattern: first letter the axis whose
     dual is applied, second the axis of the surviving factor. */
  std::vector<std::vector<Tensor>> p(static_cast<size_t>(r1));
  std::vector<std::vector<Tensor>> g(static_cast<size_t>(r2));
  std::vector<std::vector<Tensor>> q(static_cast<size_t>(r1));
  std::vector<std::vector<Tensor>> u(static_cast<size_t>(r3));
  std::vector<std::vector<Tensor>> h(static_cast<size_t>(r2));
  std::vector<std::vector<Tensor>> v(static_cast<size_t>(r3));
  for (int i = 0; i < r1; ++i)
    for (int t = 0; t < r2; ++t)
      p[size_t(i)].push_back(
          negate(contract_axis(dual(0, i), 0, dec.b(1, t))));
  for (int t = 0; t < r2; ++t)
    for (int i = 0; i < r1; ++i)
      g[size_t(t)].push_back(
          negate(contract_axis(dual(1, t), 0, dec.b(0, i))));
  for (int i = 0; i < r1; ++i)
    for (int s = 0; s < r3; ++s)
      q[size_t(i)].push_back(
          negate(contract_axis(dual(0, i), 0, dec.b(2, s))));
  for (int s = 0; s < r3; ++s)
    for (int i = 0; i < r1; ++i)
      u[size_t(s)].push_back(
          negate(contract_axis(dual(2, s), 1, dec.b(0, i))));
  for (int t = 0; t < r2; ++t)
    for (int s = 0; s < r3; ++s)
      h[size_t(t)].push_back(
          negate(contract_axis(dual(1, t), 1, dec.b(2, s))));
  for (int s = 0; s < r3; ++s)
    for (int t = 0; t < r2; ++t)
      v[size_t(s)].push_back(
          negate(contract_axis(dual(2, s), 1, dec.b(1, t))));

  /* Scalar coefficients of the rank-one layer, one per term triple. */
  std::vector<std::vector<std::vector<int>>> lam(
      static_cast<size_t>(r1),
      std::vector<std::vector<int>>(static_cast<size_t>(r2),
                                    std::vector<int>(static_cast<size_t>(r3), 0)));
  auto mu = lam, nu = lam;
  for (int i = 0; i < r1; ++i)
    for (int t = 0; t < r2; ++t) {
      Tensor joint = add(p[size_t(i)][size_t(t)], g[size_t(t)][size_t(i)]);
      Tensor rest = joint;
      for (int s = 0; s < r3; ++s) {
        int c = contract_axis(dual(2, s), 0, joint).as_scalar();
        lam[size_t(i)][size_t(t)][size_t(s)] = c;
        rest = sub(rest, scale(c, vec_to_tensor(dec.a(2, s))));
      }
      if (!rest.is_zero())
        throw InternalContradiction(
            "pair residual escapes the span of the third axis family");
    }
  for (int i = 0; i < r1; ++i)
    for (int s = 0; s < r3; ++s) {
      Tensor joint = add(q[size_t(i)][size_t(s)], u[size_t(s)][size_t(i)]);
      Tensor rest = joint;
      for (int t = 0; t < r2; ++t) {
        int c = contract_axis(dual(1, t), 0, joint).as_scalar();
        mu[size_t(i)][size_t(t)][size_t(s)] = c;
        rest = sub(rest, scale(c, vec_to_tensor(dec.a(1, t))));
      }
      if (!rest.is_zero())
        throw InternalContradiction(
            "pair residual escapes the span of the second axis family");
    }
  for (int t = 0; t < r2; ++t)
    for (int s = 0; s < r3; ++s) {
      Tensor joint = add(h[size_t(t)][size_t(s)], v[size_t(s)][size_t(t)]);
      Tensor rest = joint;
      for (int i = 0; i < r1; ++i) {
        int c = contract_axis(dual(0, i), 0, joint).as_scalar();
        nu[size_t(i)][size_t(t)][size_t(s)] = c;
        rest = sub(rest, scale(c, vec_to_tensor(dec.a(0, i))));
      }
      if (!rest.is_zero())
        throw InternalContradiction(
            "pair residual escapes the span of the first axis family");
    }

  ZeroFormCertificate cert(F, dims, shape);
  auto put = [&](std::vector<int> axes, std::vector<int> indices, int axis,
                 Tensor value) {
    if (value.is_zero()) return;
    auto [it, fresh] = cert.entries.try_emplace(
        ZeroFormKey{std::move(axes), std::move(indices), axis},
        std::move(value));
    if (!fresh) it->second = add(it->second, value);
  };

  for (int i = 0; i < r1; ++i)
    for (int t = 0; t < r2; ++t) {
      Tensor first = p[size_t(i)][size_t(t)];
      for (int s = 0; s < r3; ++s)
        first = sub(first, scale(lam[size_t(i)][size_t(t)][size_t(s)],
                                 vec_to_tensor(dec.a(2, s))));
      put({0, 1}, {i, t}, 0, first);
      put({0, 1}, {i, t}, 1, g[size_t(t)][size_t(i)]);
    }
  for (int i = 0; i < r1; ++i)
    for (int s = 0; s < r3; ++s) {
      Tensor second = u[size_t(s)][size_t(i)];
      for (int t = 0; t < r2; ++t)
        second = sub(second, scale(mu[size_t(i)][size_t(t)][size_t(s)],
                                   vec_to_tensor(dec.a(1, t))));
      put({0, 2}, {i, s}, 0, q[size_t(i)][size_t(s)]);
      put({0, 2}, {i, s}, 2, second);
    }
  for (int t = 0; t < r2; ++t)
    for (int s = 0; s < r3; ++s) {
      Tensor first = h[size_t(t)][size_t(s)];
      for (int i = 0; i < r1; ++i)
        first = sub(first, scale(nu[size_t(i)][size_t(t)][size_t(s)],
                                 vec_to_tensor(dec.a(0, i))));
      put({1, 2}, {t, s}, 1, first);
      put({1, 2}, {t, s}, 2, v[size_t(s)][size_t(t)]);
    }
  for (int i = 0; i < r1; ++i)
    for (int t = 0; t < r2; ++t)
      for (int s = 0; s < r3; ++s) {
        int l = lam[size_t(i)][size_t(t)][size_t(s)];
        int m = mu[size_t(i)][size_t(t)][size_t(s)];
        int n = nu[size_t(i)][size_t(t)][size_t(s)];
        if (F.add(l, F.add(m, n)) != 0)
          throw InternalContradiction(
              "rank-one layer coefficients do not cancel");
        put({0, 1, 2}, {i, t, s}, 0, Tensor::scalar(F, l));
        put({0, 1, 2}, {i, t, s}, 1, Tensor::scalar(F, n));
        put({0, 1, 2}, {i, t, s}, 2, Tensor::scalar(F, m));
      }
  return cert;
}

ZeroFormCertificate difference_certificate(const SliceDecomposition& dec1,
                                           const SliceDecomposition& dec2) {
  if (!(dec1.field == dec2.field) || dec1.dims != dec2.dims)
    throw MismatchedOneVariableFunctions(
        "decompositions live on different spaces");
  if (dec1.shape() != dec2.shape())
    throw MismatchedOneVariableFunctions("term counts differ");
  int d = dec1.order();
  std::vector<int> shape = dec1.shape();
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < shape[size_t(j)]; ++i)
      if (!(dec1.a(j, i) == dec2.a(j, i)))
        throw MismatchedOneVariableFunctions(
            "one-variable function of axis " + std::to_string(j + 1) +
            " term " + std::to_string(i + 1) + " differs");
  if (!(assemble(dec1) == assemble(dec2)))
    throw DifferentTensors("decompositions assemble to different tensors");

  SliceDecomposition diff(dec1.field, dec1.dims);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < shape[size_t(j)]; ++i)
      diff.add_term(j, dec1.a(j, i), sub(dec2.b(j, i), dec1.b(j, i)));
  return extract_zero_form(diff);
}

}  // namespace slicelab
