#pragma once

namespace dtrec {

// Elementary-operation tally: additions/subtractions, multiplications/
// divisions, two-quantity comparisons and assignments are each one unit.
// value_mul_div is the subset of mul_div spent on reconstructed values
// themselves (as opposed to ordering and weight setup); the solver keeps it
// at zero, values are reached by subtraction alone.
struct OpCounter {
  long long add_sub = 0;
  long long mul_div = 0;
  long long compares = 0;
  long long assigns = 0;
  long long value_mul_div = 0;

  long long total() const { return add_sub + mul_div + compares + assigns; }

  OpCounter& operator+=(const OpCounter& other) {
    add_sub += other.add_sub;
    mul_div += other.mul_div;
    compares += other.compares;
    assigns += other.assigns;
    value_mul_div += other.value_mul_div;
    return *this;
  }
};

}  // namespace dtrec
