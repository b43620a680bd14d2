#include "vexlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace vexlab {

namespace {

// K15 nodes (positive half) and weights; G7 weights on the shared nodes.
constexpr std::array<double, 8> kK15Nodes = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};

constexpr std::array<double, 8> kK15Weights = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};

constexpr std::array<double, 4> kG7Weights = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

struct GkResult {
    double integral;
    double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(c);
    double kron = kK15Weights[0] * f0;
    double gauss = kG7Weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kK15Nodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kK15Weights[i] * fsum;
        if (i % 2 == 0) gauss += kG7Weights[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

struct Segment {
    double a, b, integral, error;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// Gauss-Legendre tables on [-1,1].
constexpr std::array<double, 4> kGL4x = {-0.861136311594052575223946488893, -0.339981043584856264802665759103,
                                         0.339981043584856264802665759103, 0.861136311594052575223946488893};
constexpr std::array<double, 4> kGL4w = {0.347854845137453857373063949222, 0.652145154862546142626936050778,
                                         0.652145154862546142626936050778, 0.347854845137453857373063949222};

constexpr std::array<double, 5> kGL5x = {-0.906179845938663992797626878299, -0.538469310105683091036314420700, 0.0,
                                         0.538469310105683091036314420700, 0.906179845938663992797626878299};
constexpr std::array<double, 5> kGL5w = {0.236926885056189087514264040720, 0.478628670499366468041291514836,
                                         0.568888888888888888888888888889, 0.478628670499366468041291514836,
                                         0.236926885056189087514264040720};

constexpr std::array<double, 6> kGL6x = {-0.932469514203152027812301554494, -0.661209386466264513661399595020,
                                         -0.238619186083196908630501721681, 0.238619186083196908630501721681,
                                         0.661209386466264513661399595020, 0.932469514203152027812301554494};
constexpr std::array<double, 6> kGL6w = {0.171324492379170345040296142173, 0.360761573048138607569833513838,
                                         0.467913934572691047389870343990, 0.467913934572691047389870343990,
                                         0.360761573048138607569833513838, 0.171324492379170345040296142173};

constexpr std::array<double, 7> kGL7x = {-0.949107912342758524526189684048, -0.741531185599394439863864773281,
                                         -0.405845151377397166906606412077, 0.0,
                                         0.405845151377397166906606412077, 0.741531185599394439863864773281,
                                         0.949107912342758524526189684048};
constexpr std::array<double, 7> kGL7w = {0.129484966168869693270611432679, 0.279705391489276667901467771424,
                                         0.381830050505118944950369775489, 0.417959183673469387755102040816,
                                         0.381830050505118944950369775489, 0.279705391489276667901467771424,
                                         0.129484966168869693270611432679};

constexpr std::array<double, 8> kGL8x = {-0.960289856497536231683560868569, -0.796666477413626739591553936476,
                                         -0.525532409916328985817739049189, -0.183434642495649804939476142360,
                                         0.183434642495649804939476142360, 0.525532409916328985817739049189,
                                         0.796666477413626739591553936476, 0.960289856497536231683560868569};
constexpr std::array<double, 8> kGL8w = {0.101228536290376259152531354310, 0.222381034453374470544355994426,
                                         0.313706645877887287337962201987, 0.362683783378361982965150449277,
                                         0.362683783378361982965150449277, 0.313706645877887287337962201987,
                                         0.222381034453374470544355994426, 0.101228536290376259152531354310};

constexpr std::array<double, 12> kGL12x = {
    -0.981560634246719250690549090149, -0.904117256370474856678465866119, -0.769902674194304687036893833213,
    -0.587317954286617447296702418941, -0.367831498998180193752691536644, -0.125233408511468915472441369464,
    0.125233408511468915472441369464, 0.367831498998180193752691536644, 0.587317954286617447296702418941,
    0.769902674194304687036893833213, 0.904117256370474856678465866119, 0.981560634246719250690549090149};
constexpr std::array<double, 12> kGL12w = {
    0.047175336386511827194615961485, 0.106939325995318430960254718194, 0.160078328543346226334652529543,
    0.203167426723065921749064455810, 0.233492536538354808760849898925, 0.249147045813402785000562436043,
    0.249147045813402785000562436043, 0.233492536538354808760849898925, 0.203167426723065921749064455810,
    0.160078328543346226334652529543, 0.106939325995318430960254718194, 0.047175336386511827194615961485};

constexpr std::array<double, 16> kGL16x = {
    -0.989400934991649932596154173450, -0.944575023073232576077988415535, -0.865631202387831743880467897712,
    -0.755404408355003033895101194847, -0.617876244402643748446671764049, -0.458016777657227386342419442984,
    -0.281603550779258913230460501460, -0.095012509837637440185319335425, 0.095012509837637440185319335425,
    0.281603550779258913230460501460, 0.458016777657227386342419442984, 0.617876244402643748446671764049,
    0.755404408355003033895101194847, 0.865631202387831743880467897712, 0.944575023073232576077988415535,
    0.989400934991649932596154173450};
constexpr std::array<double, 16> kGL16w = {
    0.027152459411754094851780572456, 0.062253523938647892862843836994, 0.095158511682492784809925107602,
    0.124628971255533872052476282192, 0.149595988816576732081501730547, 0.169156519395002538189312079030,
    0.182603415044923588866763667969, 0.189450610455068496285396723208, 0.189450610455068496285396723208,
    0.182603415044923588866763667969, 0.169156519395002538189312079030, 0.149595988816576732081501730547,
    0.124628971255533872052476282192, 0.095158511682492784809925107602, 0.062253523938647892862843836994,
    0.027152459411754094851780572456};

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b, double abs_tol,
                    double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    std::priority_queue<Segment> queue;
    GkResult r = gk15(f, a, b);
    queue.push({a, b, r.integral, r.error, 0});
    double total = r.integral;
    double total_err = r.error;
    // bounded number of splits keeps discontinuous integrands from looping
    for (int iter = 0; iter < 4000; ++iter) {
        if (total_err <= abs_tol + rel_tol * std::abs(total)) break;
        Segment s = queue.top();
        if (s.depth >= max_depth) break;
        queue.pop();
        total -= s.integral;
        total_err -= s.error;
        const double m = 0.5 * (s.a + s.b);
        GkResult rl = gk15(f, s.a, m);
        GkResult rr = gk15(f, m, s.b);
        queue.push({s.a, m, rl.integral, rl.error, s.depth + 1});
        queue.push({m, s.b, rr.integral, rr.error, s.depth + 1});
        total += rl.integral + rr.integral;
        total_err += rl.error + rr.error;
    }
    return total;
}

std::span<const double> gauss_nodes(int order) {
    switch (order) {
        case 4: return kGL4x;
        case 5: return kGL5x;
        case 6: return kGL6x;
        case 7: return kGL7x;
        case 8: return kGL8x;
        case 12: return kGL12x;
        case 16: return kGL16x;
        default: throw std::invalid_argument("gauss_nodes: unsupported order");
    }
}

std::span<const double> gauss_weights(int order) {
    switch (order) {
        case 4: return kGL4w;
        case 5: return kGL5w;
        case 6: return kGL6w;
        case 7: return kGL7w;
        case 8: return kGL8w;
        case 12: return kGL12w;
        case 16: return kGL16w;
        default: throw std::invalid_argument("gauss_weights: unsupported order");
    }
}

double pairwise_sum(std::span<const double> v) {
    if (v.empty()) return 0.0;
    if (v.size() <= 8) {
        Accumulator acc;
        for (double x : v) acc.add(x);
        return acc.value();
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace vexlab
