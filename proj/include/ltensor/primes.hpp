#pragma once
#include "ltensor/characters.hpp"
#include "ltensor/summation.hpp"

namespace ltensor {

struct PrimePower {
  long long value = 0; // p^m
  long long p = 0;
  int m = 0;
  double log_p = 0.0;
};

// ascending by value; cached internally per limit
const std::vector<PrimePower> &prime_powers(long long limit);

// sum over p^m <= limit of chi(p^m) p^{-ms} (m log p)^{w-1} log p;
// rejects Re(s) <= 1 unless force
cplx von_mangoldt_sum(const DirichletCharacter &chi, cplx s, cplx w,
                      long long limit, bool force = false);

// sum over p^m <= limit of chi(p^m) p^{-ms} / m
cplx dirichlet_log_sum(const DirichletCharacter &chi, cplx s, long long limit);

// upper bound for the von Mangoldt tail beyond the limit
double tail_estimate(cplx s, cplx w, long long limit);

} // namespace ltensor
