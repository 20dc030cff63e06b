#include "xn/fixtures.hpp"

#include <map>
#include <stdexcept>

namespace xn::fixtures {

namespace {

std::vector<std::size_t> identity_order(std::size_t count) {
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    return order;
}

Rational half(long numerator) {
    Rational r(numerator, 2);
    r.canonicalize();
    return r;
}

std::vector<Rational> as_rationals(const std::vector<long>& row) {
    return {row.begin(), row.end()};
}

[[noreturn]] void unknown_level(const char* what, long n) {
    throw std::out_of_range(std::string("no reference ") + what +
                            " for level " + std::to_string(n));
}

}  // namespace

std::vector<std::size_t> published_table_order(long n) {
    switch (n) {
        case 5: return identity_order(5);
        case 7: return identity_order(6);
        // The reference table lists the two dimension-(n-1) constituents in
        // the opposite order from ours.
        case 11: return {0, 1, 2, 4, 3, 5, 6, 7};
        // ... and likewise the two dimension-(n+1) constituents.
        case 13: return {0, 1, 2, 3, 4, 5, 6, 8, 7};
        default: unknown_level("table order", n);
    }
}

std::vector<long> published_gamma_row(long n) {
    switch (n) {
        case 5: return {0, 3, 3, 4, 5};
        case 7: return {0, 3, 4, 6, 7, 8};
        case 11: return {0, 5, 6, 11, 10, 12, 12, 12};
        case 13: return {0, 7, 7, 13, 13, 13, 13, 14, 15};
        default: unknown_level("module row", n);
    }
}

std::vector<Rational> published_average_row(long n) {
    switch (n) {
        case 5: return as_rationals({0, 3, 3, 4, 5});
        case 7: return {0, half(7), half(7), 6, 7, 8};
        case 11: return {0, half(11), half(11), 11, 10, 12, 12, 12};
        case 13: return as_rationals({0, 7, 7, 13, 13, 13, 13, 14, 15});
        default: unknown_level("average row", n);
    }
}

std::vector<long> published_gamma_prefix(long n) {
    switch (n) {
        case 17: return {0, 9, 9, 18, 17, 17, 17, 18};
        case 19: return {0, 9, 10, 20, 20, 19, 19, 20};
        case 23: return {0, 11, 14, 24, 24, 24, 23, 23};
        case 29: return {0, 16, 16, 30, 31, 31, 30};
        default: unknown_level("module row prefix", n);
    }
}

std::vector<Rational> published_average_prefix(long n) {
    switch (n) {
        case 17: return as_rationals({0, 9, 9, 18, 17, 17, 17, 18});
        case 19: return {0, half(19), half(19), 20, 20, 19, 19, 20};
        case 23: return {0, half(25), half(25), 24, 24, 24, 23, 23};
        case 29: return as_rationals({0, 16, 16, 30, 31, 31, 30});
        default: unknown_level("average row prefix", n);
    }
}

std::vector<std::size_t> published_example_order(long n) {
    switch (n) {
        case 7: return identity_order(6);
        // The worked example swaps both the twin pair and the two
        // equal-dimension constituents in each of the other blocks.
        case 11: return {0, 2, 1, 4, 3, 5, 7, 6};
        default: unknown_level("example order", n);
    }
}

std::vector<long> published_example_gamma(long n) {
    switch (n) {
        case 7: return {0, 3, 4, 6, 7, 8};
        case 11: return {0, 6, 5, 11, 10, 12, 12, 12};
        default: unknown_level("example module row", n);
    }
}

std::vector<Rational> published_example_average(long n) {
    switch (n) {
        case 7: return {0, half(7), half(7), 6, 7, 8};
        case 11: return {0, half(11), half(11), 11, 10, 12, 12, 12};
        default: unknown_level("example average row", n);
    }
}

const std::vector<std::array<long, 3>>& klein_rational_points_43() {
    static const std::vector<std::array<long, 3>> points = {
    {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 38, 1}, {2, 24, 1}, {3, 8, 1},
    {3, 17, 1}, {3, 18, 1}, {4, 40, 1}, {5, 13, 1}, {5, 34, 1}, {5, 39, 1},
    {6, 21, 1}, {6, 29, 1}, {6, 36, 1}, {8, 23, 1}, {9, 10, 1}, {9, 15, 1},
    {9, 18, 1}, {10, 7, 1}, {10, 11, 1}, {10, 25, 1}, {11, 6, 1},
    {12, 22, 1}, {12, 28, 1}, {12, 36, 1}, {13, 25, 1}, {13, 30, 1},
    {13, 31, 1}, {14, 7, 1}, {14, 13, 1}, {14, 23, 1}, {15, 14, 1},
    {15, 34, 1}, {15, 38, 1}, {16, 24, 1}, {17, 17, 1}, {17, 29, 1},
    {17, 40, 1}, {19, 7, 1}, {19, 9, 1}, {19, 27, 1}, {20, 25, 1},
    {20, 29, 1}, {20, 32, 1}, {21, 23, 1}, {22, 40, 1}, {23, 17, 1},
    {23, 34, 1}, {23, 35, 1}, {24, 4, 1}, {24, 13, 1}, {24, 26, 1},
    {25, 24, 1}, {25, 26, 1}, {25, 36, 1}, {27, 38, 1}, {31, 9, 1},
    {31, 16, 1}, {31, 18, 1}, {32, 31, 1}, {33, 14, 1}, {33, 30, 1},
    {33, 42, 1}, {35, 10, 1}, {36, 6, 1}, {36, 9, 1}, {36, 28, 1},
    {37, 2, 1}, {37, 15, 1}, {37, 26, 1}, {38, 1, 1}, {38, 14, 1},
    {38, 28, 1}, {39, 6, 1}, {40, 15, 1}, {40, 30, 1}, {40, 41, 1},
    {41, 31, 1}, {42, 10, 1}
};
    return points;
}

const std::vector<std::array<long, 3>>& klein_base_orbit_43() {
    static const std::vector<std::array<long, 3>> points = {
    {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {2, 24, 1}, {3, 8, 1}, {5, 39, 1},
    {8, 23, 1}, {9, 18, 1}, {12, 22, 1}, {13, 30, 1}, {14, 7, 1},
    {15, 34, 1}, {17, 29, 1}, {19, 27, 1}, {20, 32, 1}, {22, 40, 1},
    {25, 26, 1}, {27, 38, 1}, {32, 31, 1}, {33, 42, 1}, {36, 28, 1},
    {37, 2, 1}, {39, 6, 1}, {42, 10, 1}
};
    return points;
}

std::array<std::array<std::array<long, 3>, 3>, 3> klein_rho_generators_43() {
    return {{
        {{{16, 0, 0}, {0, 4, 0}, {0, 0, 41}}},
        {{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}},
        {{{11, 37, 39}, {37, 39, 11}, {39, 11, 37}}},
    }};
}

std::vector<std::vector<std::array<long, 6>>> published_relations_11() {
    return {
        {{-1, 2, 1, 1, 0, 0}, {1, 0, 1, 0, 1, 2}, {1, 0, 0, 2, 1, 1}},
        {{-1, 3, 0, 0, 1, 0}, {1, 0, 1, 0, 3, 0}, {-1, 0, 0, 3, 0, 1}},
        {{-1, 1, 0, 3, 0, 0}, {-1, 3, 0, 0, 0, 1}, {1, 0, 3, 0, 1, 0}},
        {{-1, 2, 0, 1, 1, 0}, {1, 1, 0, 1, 0, 2}, {1, 0, 2, 0, 1, 1}},
        {{-1, 2, 1, 0, 0, 1}, {1, 1, 0, 1, 2, 0}, {-1, 0, 2, 1, 0, 1}},
        {{1, 3, 1, 0, 0, 0}, {-1, 0, 0, 1, 0, 3}, {-1, 0, 0, 0, 3, 1}},
        {{1, 1, 0, 0, 0, 3}, {-1, 0, 3, 1, 0, 0}, {1, 0, 0, 3, 1, 0}},
        {{-1, 1, 2, 0, 1, 0}, {1, 1, 0, 0, 2, 1}, {1, 0, 1, 2, 0, 1}},
        {{1, 1, 3, 0, 0, 0}, {1, 0, 1, 0, 0, 3}, {-1, 0, 0, 1, 3, 0}},
        {{1, 1, 1, 2, 0, 0}, {1, 1, 0, 0, 1, 2}, {-1, 0, 1, 1, 2, 0}},
    };
}

}  // namespace xn::fixtures
