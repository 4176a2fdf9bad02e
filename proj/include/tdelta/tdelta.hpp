#ifndef TDELTA_TDELTA_HPP
#define TDELTA_TDELTA_HPP

#include "tdelta/asymptotics.hpp"
#include "tdelta/errors.hpp"
#include "tdelta/families.hpp"
#include "tdelta/laurent.hpp"
#include "tdelta/symbol.hpp"
#include "tdelta/toeplitz.hpp"
#include "tdelta/wiener_hopf.hpp"
#include "tdelta/xy_chain.hpp"

#endif
