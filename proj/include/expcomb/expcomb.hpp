#ifndef EXPCOMB_EXPCOMB_HPP
#define EXPCOMB_EXPCOMB_HPP

#include "address.hpp"
#include "angled.hpp"
#include "component.hpp"
#include "entry.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "internal_address.hpp"
#include "itinerary.hpp"
#include "oracle.hpp"
#include "tuning.hpp"

#endif
