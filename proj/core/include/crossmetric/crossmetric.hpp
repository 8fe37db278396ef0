#pragma once

#include "crossmetric/base_triple.hpp"
#include "crossmetric/berezin.hpp"
#include "crossmetric/crossed.hpp"
#include "crossmetric/errors.hpp"
#include "crossmetric/group.hpp"
#include "crossmetric/length.hpp"
#include "crossmetric/monge_kantorovich.hpp"
#include "crossmetric/numerics.hpp"
#include "crossmetric/random.hpp"
#include "crossmetric/seminorms.hpp"
