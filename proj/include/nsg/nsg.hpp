#ifndef NSG_NSG_HPP_
#define NSG_NSG_HPP_

#include "constructions.hpp"
#include "error.hpp"
#include "explorer.hpp"
#include "io.hpp"
#include "semigroup.hpp"
#include "sumsets.hpp"
#include "wilf.hpp"

#endif  // NSG_NSG_HPP_
