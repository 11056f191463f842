#include "starident/sgp4.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "starident/time_util.hpp"

namespace starident::geometry {

namespace {

// WGS72 gravity model, the convention for SGP4 element sets.
constexpr double kMuKm3S2 = 398600.8;
constexpr double kEarthRadiusKm = 6378.135;
constexpr double kJ2 = 0.001082616;
constexpr double kJ3 = -0.00000253881;
constexpr double kJ4 = -0.00000165597;
constexpr double kJ3oJ2 = kJ3 / kJ2;
const double kXke = 60.0 / std::sqrt(kEarthRadiusKm * kEarthRadiusKm * kEarthRadiusKm / kMuKm3S2);
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kDegToRad = M_PI / 180.0;

std::string_view trimmed(std::string_view s) {
    const auto b = s.find_first_not_of(' ');
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(' ');
    return s.substr(b, e - b + 1);
}

double parse_double_field(std::string_view field, const char* what) {
    const std::string_view t = trimmed(field);
    if (t.empty()) return 0.0;
    std::string buf(t);
    // Fields like " .00000023" or "+.00000023" need an explicit leading zero.
    if (!buf.empty() && (buf[0] == '+' || buf[0] == '-') && buf.size() > 1 && buf[1] == '.') {
        buf.insert(1, "0");
    } else if (buf[0] == '.') {
        buf.insert(0, "0");
    }
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) throw ParseError(std::string("bad TLE numeric field: ") + what);
    return v;
}

/// TLE implied-decimal exponent form, e.g. " 28098-4" = 0.28098e-4.
double parse_exponent_field(std::string_view field) {
    const std::string_view t = trimmed(field);
    if (t.empty()) return 0.0;
    size_t i = 0;
    double sign = 1.0;
    if (t[i] == '+' || t[i] == '-') {
        if (t[i] == '-') sign = -1.0;
        ++i;
    }
    double mantissa = 0.0;
    double scale = 1.0;
    size_t digits = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
        mantissa = mantissa * 10.0 + (t[i] - '0');
        scale *= 10.0;
        ++digits;
        ++i;
    }
    if (digits == 0 && i < t.size()) throw ParseError("bad TLE exponent field");
    int exp = 0;
    int exp_sign = 1;
    if (i < t.size()) {
        if (t[i] == '-') exp_sign = -1;
        else if (t[i] != '+') throw ParseError("bad TLE exponent field");
        ++i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
            exp = exp * 10 + (t[i] - '0');
            ++i;
        }
    }
    return sign * (mantissa / scale) * std::pow(10.0, exp_sign * exp);
}

int parse_int_field(std::string_view field, const char* what) {
    const std::string_view t = trimmed(field);
    if (t.empty()) return 0;
    int v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{}) throw ParseError(std::string("bad TLE integer field: ") + what);
    (void)p;
    return v;
}

}  // namespace

int decode_norad_field(std::string_view field) {
    const std::string_view t = trimmed(field);
    if (t.empty()) throw ParseError("empty NORAD catalog field");
    const char c = t[0];
    if (std::isalpha(static_cast<unsigned char>(c))) {
        // Alpha-5: A=10 .. Z=33 skipping I and O.
        const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (u == 'I' || u == 'O') throw ParseError("invalid alpha-5 NORAD digit");
        int head = u - 'A' + 10;
        if (u > 'I') --head;
        if (u > 'O') --head;
        return head * 10000 + parse_int_field(t.substr(1), "norad tail");
    }
    return parse_int_field(t, "norad");
}

TleElements decode_tle_elements(const std::string& line1, const std::string& line2) {
    if (line1.size() < 69 || line2.size() < 69) throw ParseError("TLE line shorter than 69 chars");
    if (line1[0] != '1' || line2[0] != '2') throw ParseError("TLE line numbers must be 1 and 2");

    TleElements el;
    el.norad_id = decode_norad_field(line1.substr(2, 5));
    const int norad2 = decode_norad_field(line2.substr(2, 5));
    if (norad2 != el.norad_id) throw ParseError("NORAD id differs between TLE lines");

    el.epoch_year = parse_int_field(line1.substr(18, 2), "epoch year");
    el.epoch_day = parse_double_field(line1.substr(20, 12), "epoch day");
    el.epoch_unix = timeutil::unix_from_tle_epoch(el.epoch_year, el.epoch_day);
    el.ndot = parse_double_field(line1.substr(33, 10), "ndot") * 2.0;
    el.nddot = parse_exponent_field(line1.substr(44, 8)) * 6.0;
    el.bstar = parse_exponent_field(line1.substr(53, 8));

    el.inclination_deg = parse_double_field(line2.substr(8, 8), "inclination");
    el.raan_deg = parse_double_field(line2.substr(17, 8), "raan");
    el.eccentricity = parse_double_field("0." + line2.substr(26, 7), "eccentricity");
    el.arg_perigee_deg = parse_double_field(line2.substr(34, 8), "arg perigee");
    el.mean_anomaly_deg = parse_double_field(line2.substr(43, 8), "mean anomaly");
    el.mean_motion_revday = parse_double_field(line2.substr(52, 11), "mean motion");
    return el;
}

Sgp4::Sgp4(const TleRecord& tle) : Sgp4(tle.line1, tle.line2) {}

Sgp4::Sgp4(const std::string& line1, const std::string& line2)
    : elements_(decode_tle_elements(line1, line2)) {
    initialize();
}

double Sgp4::semi_major_axis_km() const { return a_ * kEarthRadiusKm; }

double Sgp4::period_minutes() const { return kTwoPi / no_unkozai_; }

void Sgp4::initialize() {
    ecco_ = elements_.eccentricity;
    inclo_ = elements_.inclination_deg * kDegToRad;
    nodeo_ = elements_.raan_deg * kDegToRad;
    argpo_ = elements_.arg_perigee_deg * kDegToRad;
    mo_ = elements_.mean_anomaly_deg * kDegToRad;
    no_kozai_ = elements_.mean_motion_revday * kTwoPi / 1440.0;
    bstar_ = elements_.bstar;

    if (no_kozai_ <= 0.0) throw Error("TLE mean motion must be positive");
    if (ecco_ < 0.0 || ecco_ >= 1.0) throw Error("TLE eccentricity out of range");

    const double eccsq = ecco_ * ecco_;
    const double omeosq = 1.0 - eccsq;
    const double rteosq = std::sqrt(omeosq);
    const double cosio = std::cos(inclo_);
    const double cosio2 = cosio * cosio;
    const double sinio = std::sin(inclo_);

    // Un-kozai the mean motion.
    const double ak = std::pow(kXke / no_kozai_, 2.0 / 3.0);
    const double d1 = 0.75 * kJ2 * (3.0 * cosio2 - 1.0) / (rteosq * omeosq);
    double del = d1 / (ak * ak);
    const double adel = ak * (1.0 - del * del - del * (1.0 / 3.0 + 134.0 * del * del / 81.0));
    del = d1 / (adel * adel);
    no_unkozai_ = no_kozai_ / (1.0 + del);

    if (kTwoPi / no_unkozai_ >= 225.0) {
        throw Error("deep-space orbit (period >= 225 min) not supported by this propagator");
    }

    const double ao = std::pow(kXke / no_unkozai_, 2.0 / 3.0);
    a_ = ao;
    const double po = ao * omeosq;
    const double con42 = 1.0 - 5.0 * cosio2;
    con41_ = -con42 - cosio2 - cosio2;
    const double posq = po * po;
    const double rp = ao * (1.0 - ecco_);

    simple_ = rp < (220.0 / kEarthRadiusKm + 1.0);

    double sfour = 78.0 / kEarthRadiusKm + 1.0;
    const double qzms2ttemp = (120.0 - 78.0) / kEarthRadiusKm;
    double qzms24 = qzms2ttemp * qzms2ttemp * qzms2ttemp * qzms2ttemp;
    const double perige = (rp - 1.0) * kEarthRadiusKm;
    if (perige < 156.0) {
        sfour = perige - 78.0;
        if (perige < 98.0) sfour = 20.0;
        const double qzms24temp = (120.0 - sfour) / kEarthRadiusKm;
        qzms24 = qzms24temp * qzms24temp * qzms24temp * qzms24temp;
        sfour = sfour / kEarthRadiusKm + 1.0;
    }
    const double pinvsq = 1.0 / posq;

    const double tsi = 1.0 / (ao - sfour);
    eta_ = ao * ecco_ * tsi;
    const double etasq = eta_ * eta_;
    const double eeta = ecco_ * eta_;
    const double psisq = std::fabs(1.0 - etasq);
    const double coef = qzms24 * std::pow(tsi, 4.0);
    const double coef1 = coef / std::pow(psisq, 3.5);
    const double cc2 =
        coef1 * no_unkozai_ *
        (ao * (1.0 + 1.5 * etasq + eeta * (4.0 + etasq)) +
         0.375 * kJ2 * tsi / psisq * con41_ * (8.0 + 3.0 * etasq * (8.0 + etasq)));
    cc1_ = bstar_ * cc2;
    double cc3 = 0.0;
    if (ecco_ > 1.0e-4) cc3 = -2.0 * coef * tsi * kJ3oJ2 * no_unkozai_ * sinio / ecco_;
    x1mth2_ = 1.0 - cosio2;
    cc4_ = 2.0 * no_unkozai_ * coef1 * ao * omeosq *
           (eta_ * (2.0 + 0.5 * etasq) + ecco_ * (0.5 + 2.0 * etasq) -
            kJ2 * tsi / (ao * psisq) *
                (-3.0 * con41_ * (1.0 - 2.0 * eeta + etasq * (1.5 - 0.5 * eeta)) +
                 0.75 * x1mth2_ * (2.0 * etasq - eeta * (1.0 + etasq)) * std::cos(2.0 * argpo_)));
    cc5_ = 2.0 * coef1 * ao * omeosq * (1.0 + 2.75 * (etasq + eeta) + eeta * etasq);

    const double cosio4 = cosio2 * cosio2;
    const double temp1 = 1.5 * kJ2 * pinvsq * no_unkozai_;
    const double temp2 = 0.5 * temp1 * kJ2 * pinvsq;
    const double temp3 = -0.46875 * kJ4 * pinvsq * pinvsq * no_unkozai_;
    mdot_ = no_unkozai_ + 0.5 * temp1 * rteosq * con41_ +
            0.0625 * temp2 * rteosq * (13.0 - 78.0 * cosio2 + 137.0 * cosio4);
    argpdot_ = -0.5 * temp1 * con42 +
               0.0625 * temp2 * (7.0 - 114.0 * cosio2 + 395.0 * cosio4) +
               temp3 * (3.0 - 36.0 * cosio2 + 49.0 * cosio4);
    const double xhdot1 = -temp1 * cosio;
    nodedot_ = xhdot1 +
               (0.5 * temp2 * (4.0 - 19.0 * cosio2) + 2.0 * temp3 * (3.0 - 7.0 * cosio2)) * cosio;
    omgcof_ = bstar_ * cc3 * std::cos(argpo_);
    xmcof_ = 0.0;
    if (ecco_ > 1.0e-4) xmcof_ = -(2.0 / 3.0) * coef * bstar_ / eeta;
    nodecf_ = 3.5 * omeosq * xhdot1 * cc1_;
    t2cof_ = 1.5 * cc1_;
    if (std::fabs(cosio + 1.0) > 1.5e-12) {
        xlcof_ = -0.25 * kJ3oJ2 * sinio * (3.0 + 5.0 * cosio) / (1.0 + cosio);
    } else {
        xlcof_ = -0.25 * kJ3oJ2 * sinio * (3.0 + 5.0 * cosio) / 1.5e-12;
    }
    aycof_ = -0.5 * kJ3oJ2 * sinio;
    const double delmotemp = 1.0 + eta_ * std::cos(mo_);
    delmo_ = delmotemp * delmotemp * delmotemp;
    sinmao_ = std::sin(mo_);
    x7thm1_ = 7.0 * cosio2 - 1.0;

    if (!simple_) {
        const double cc1sq = cc1_ * cc1_;
        d2_ = 4.0 * ao * tsi * cc1sq;
        const double temp = d2_ * tsi * cc1_ / 3.0;
        d3_ = (17.0 * ao + sfour) * temp;
        d4_ = 0.5 * temp * ao * tsi * (221.0 * ao + 31.0 * sfour) * cc1_;
        t3cof_ = d2_ + 2.0 * cc1sq;
        t4cof_ = 0.25 * (3.0 * d3_ + cc1_ * (12.0 * d2_ + 10.0 * cc1sq));
        t5cof_ = 0.2 * (3.0 * d4_ + 12.0 * cc1_ * d3_ + 6.0 * d2_ * d2_ +
                        15.0 * cc1sq * (2.0 * d2_ + cc1sq));
    }
}

TemeState Sgp4::at_minutes(double t) const {
    const double vkmpersec = kEarthRadiusKm * kXke / 60.0;

    // Secular gravity and atmospheric drag.
    const double xmdf = mo_ + mdot_ * t;
    const double argpdf = argpo_ + argpdot_ * t;
    const double nodedf = nodeo_ + nodedot_ * t;
    double argpm = argpdf;
    double mm = xmdf;
    const double t2 = t * t;
    double nodem = nodedf + nodecf_ * t2;
    double tempa = 1.0 - cc1_ * t;
    double tempe = bstar_ * cc4_ * t;
    double templ = t2cof_ * t2;

    if (!simple_) {
        const double delomg = omgcof_ * t;
        const double delmtemp = 1.0 + eta_ * std::cos(xmdf);
        const double delm = xmcof_ * (delmtemp * delmtemp * delmtemp - delmo_);
        const double temp = delomg + delm;
        mm = xmdf + temp;
        argpm = argpdf - temp;
        const double t3 = t2 * t;
        const double t4 = t3 * t;
        tempa = tempa - d2_ * t2 - d3_ * t3 - d4_ * t4;
        tempe = tempe + bstar_ * cc5_ * (std::sin(mm) - sinmao_);
        templ = templ + t3cof_ * t3 + t4 * (t4cof_ + t * t5cof_);
    }

    const double nm = no_unkozai_;
    double em = ecco_;
    const double inclm = inclo_;
    if (nm <= 0.0) throw Error("sgp4: mean motion non-positive");

    const double am = std::pow(kXke / nm, 2.0 / 3.0) * tempa * tempa;
    em = em - tempe;
    if (em >= 1.0 || em < -0.001) throw Error("sgp4: mean eccentricity out of range");
    if (em < 1.0e-6) em = 1.0e-6;
    mm = mm + no_unkozai_ * templ;
    double xlm = mm + argpm + nodem;

    nodem = std::fmod(nodem, kTwoPi);
    argpm = std::fmod(argpm, kTwoPi);
    xlm = std::fmod(xlm, kTwoPi);
    mm = std::fmod(xlm - argpm - nodem, kTwoPi);

    const double sinim = std::sin(inclm);
    const double cosim = std::cos(inclm);

    // No lunar-solar periodics for near-earth orbits.
    const double ep = em;
    const double xincp = inclm;
    const double argpp = argpm;
    const double nodep = nodem;
    const double mp = mm;
    const double sinip = sinim;
    const double cosip = cosim;

    // Long period periodics.
    const double axnl = ep * std::cos(argpp);
    double temp = 1.0 / (am * (1.0 - ep * ep));
    const double aynl = ep * std::sin(argpp) + temp * aycof_;
    const double xl = mp + argpp + nodep + temp * xlcof_ * axnl;

    // Kepler's equation.
    const double u = std::fmod(xl - nodep, kTwoPi);
    double eo1 = u;
    double tem5 = 9999.9;
    int ktr = 1;
    double sineo1 = 0.0, coseo1 = 1.0;
    while (std::fabs(tem5) >= 1.0e-12 && ktr <= 10) {
        sineo1 = std::sin(eo1);
        coseo1 = std::cos(eo1);
        tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl;
        tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5;
        if (std::fabs(tem5) >= 0.95) tem5 = tem5 > 0.0 ? 0.95 : -0.95;
        eo1 = eo1 + tem5;
        ktr = ktr + 1;
    }

    // Short period preliminary quantities.
    const double ecose = axnl * coseo1 + aynl * sineo1;
    const double esine = axnl * sineo1 - aynl * coseo1;
    const double el2 = axnl * axnl + aynl * aynl;
    const double pl = am * (1.0 - el2);
    if (pl < 0.0) throw Error("sgp4: semi-latus rectum negative");

    const double rl = am * (1.0 - ecose);
    const double rdotl = std::sqrt(am) * esine / rl;
    const double rvdotl = std::sqrt(pl) / rl;
    const double betal = std::sqrt(1.0 - el2);
    temp = esine / (1.0 + betal);
    const double sinu = am / rl * (sineo1 - aynl - axnl * temp);
    const double cosu = am / rl * (coseo1 - axnl + aynl * temp);
    double su = std::atan2(sinu, cosu);
    const double sin2u = (cosu + cosu) * sinu;
    const double cos2u = 1.0 - 2.0 * sinu * sinu;
    temp = 1.0 / pl;
    const double temp1 = 0.5 * kJ2 * temp;
    const double temp2 = temp1 * temp;

    const double mrt =
        rl * (1.0 - 1.5 * temp2 * betal * con41_) + 0.5 * temp1 * x1mth2_ * cos2u;
    su = su - 0.25 * temp2 * x7thm1_ * sin2u;
    const double xnode = nodep + 1.5 * temp2 * cosip * sin2u;
    const double xinc = xincp + 1.5 * temp2 * cosip * sinip * cos2u;
    const double mvt = rdotl - nm * temp1 * x1mth2_ * sin2u / kXke;
    const double rvdot = rvdotl + nm * temp1 * (x1mth2_ * cos2u + 1.5 * con41_) / kXke;

    // Orientation vectors.
    const double sinsu = std::sin(su);
    const double cossu = std::cos(su);
    const double snod = std::sin(xnode);
    const double cnod = std::cos(xnode);
    const double sini = std::sin(xinc);
    const double cosi = std::cos(xinc);
    const double xmx = -snod * cosi;
    const double xmy = cnod * cosi;
    const double ux = xmx * sinsu + cnod * cossu;
    const double uy = xmy * sinsu + snod * cossu;
    const double uz = sini * sinsu;
    const double vx = xmx * cossu - cnod * sinsu;
    const double vy = xmy * cossu - snod * sinsu;
    const double vz = sini * cossu;

    if (mrt < 1.0) throw Error("sgp4: satellite has decayed");

    TemeState s;
    s.position_km = {mrt * ux * kEarthRadiusKm, mrt * uy * kEarthRadiusKm,
                     mrt * uz * kEarthRadiusKm};
    s.velocity_kms = {(mvt * ux + rvdot * vx) * vkmpersec, (mvt * uy + rvdot * vy) * vkmpersec,
                      (mvt * uz + rvdot * vz) * vkmpersec};
    return s;
}

}  // namespace starident::geometry
