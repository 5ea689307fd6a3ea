#ifndef CAMPO_TESTS_SUPPORT_HPP
#define CAMPO_TESTS_SUPPORT_HPP

#include "generators.hpp"
#include "oracles.hpp"
#include "random.hpp"

#include <gtest/gtest.h>

#endif  // CAMPO_TESTS_SUPPORT_HPP
