#pragma once

#include <compare>
#include <map>

#include "slicelab/decomposition.hpp"

namespace slicelab {

/* Certificate entry address: an axis set J (sorted, |J| >= 2), one term
   index per axis of J, and the slot axis inside J whose complementary
   function this entry helps to express. */
struct ZeroFormKey {
  std::vector<int> axes;
  std::vector<int> indices;
  int axis = 0;

  auto operator<=>(const ZeroFormKey&) const = default;
};

/* Witness that a decomposition adds up to the zero tensor.  Entries
   live on the axes outside their J (order-0 values when J is all axes);
   zero-valued entries are omitted.

   Property 1: each complementary function b_{j,i} equals the sum over
   entries with slot (j, i) of (product of the other picked one-variable
   functions) (x) entry value.
   Property 2: for every (J, index tuple), the slot values sum to zero. */
struct ZeroFormCertificate {
  FieldSpec field;
  std::vector<int> dims;
  std::vector<int> shape;
  std::map<ZeroFormKey, Tensor> entries;

  ZeroFormCertificate(const FieldSpec& f, std::vector<int> d,
                      std::vector<int> s)
      : field(f), dims(std::move(d)), shape(std::move(s)) {}
};

/* Checks both certificate properties against the decomposition by
   direct reassembly; any valid certificate is accepted. */
ValidationReport verify_zero_form(const SliceDecomposition& dec,
                                  const ZeroFormCertificate& cert);

/* Builds a certificate for a zero-assembling decomposition with
   independent per-axis families by repeated splitting: level-m
   residuals are expanded along single extra axes via the canonical
   duals, gathered by unordered key, and the non-cancelling part of each
   gathered sum is pushed to the smallest slot and re-expanded one level
   deeper.  Throws NotZero / DependentFamilies on bad input. */
ZeroFormCertificate extract_zero_form(const SliceDecomposition& dec);

/* Order-3 path with the six named expansion families and the scalar
   coefficient layers; produces the |J|=3 layer directly as the three
   zero-sum coefficient slots. */
ZeroFormCertificate extract_zero_form_order3(const SliceDecomposition& dec);

/* Certificate for dec2 minus dec1, which must share every one-variable
   function (else MismatchedOneVariableFunctions) and assemble to the
   same tensor (else DifferentTensors). */
ZeroFormCertificate difference_certificate(const SliceDecomposition& dec1,
                                           const SliceDecomposition& dec2);

}  // namespace slicelab
