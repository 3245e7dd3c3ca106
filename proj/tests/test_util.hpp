#pragma once
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

inline void check_close(double got, double want, double abstol,
                        const char* what = "value") {
  CHECK_MESSAGE(std::abs(got - want) <= abstol,
                what << ": got " << got << " want " << want << " tol " << abstol);
}
