#ifndef CAMPO_CAMPO_HPP
#define CAMPO_CAMPO_HPP

#include "campo/families.hpp"
#include "campo/fields.hpp"
#include "campo/flows.hpp"
#include "campo/integrals.hpp"
#include "campo/parse.hpp"
#include "campo/riccati.hpp"

#endif  // CAMPO_CAMPO_HPP
