#ifndef WEBJETS_HPP
#define WEBJETS_HPP

#include "webjets/errors.hpp"
#include "webjets/rational.hpp"
#include "webjets/coef_poly.hpp"
#include "webjets/poly_parse.hpp"
#include "webjets/linear_solve.hpp"
#include "webjets/fraction.hpp"
#include "webjets/ring.hpp"
#include "webjets/uni_jet.hpp"
#include "webjets/bi_jet.hpp"
#include "webjets/web.hpp"
#include "webjets/normal_form.hpp"
#include "webjets/obstructions.hpp"

#endif  // WEBJETS_HPP
