#include "starident/types.hpp"

#include <array>

namespace starident {

namespace {

struct CauseName {
    OutageCause cause;
    std::string_view full;
    std::string_view brief;
};

constexpr std::array<CauseName, kOutageCauseCount> kCauseNames = {{
    {OutageCause::kOutageUnknown, "EVENT_REASON_OUTAGE_UNKNOWN", "UNKNOWN"},
    {OutageCause::kOutageBooting, "EVENT_REASON_OUTAGE_BOOTING", "BOOTING"},
    {OutageCause::kOutageStowed, "EVENT_REASON_OUTAGE_STOWED", "STOWED"},
    {OutageCause::kOutageThermalShutdown, "EVENT_REASON_OUTAGE_THERMAL_SHUTDOWN",
     "THERMAL_SHUTDOWN"},
    {OutageCause::kOutageNoSchedule, "EVENT_REASON_OUTAGE_NO_SCHEDULE", "NO_SCHEDULE"},
    {OutageCause::kOutageNoSats, "EVENT_REASON_OUTAGE_NO_SATS", "NO_SATS"},
    {OutageCause::kOutageObstructed, "EVENT_REASON_OUTAGE_OBSTRUCTED", "OBSTRUCTED"},
    {OutageCause::kOutageNoDownlink, "EVENT_REASON_OUTAGE_NO_DOWNLINK", "NO_DOWNLINK"},
    {OutageCause::kOutageNoPings, "EVENT_REASON_OUTAGE_NO_PINGS", "NO_PINGS"},
    {OutageCause::kOutageSleeping, "EVENT_REASON_OUTAGE_SLEEPING", "SLEEPING"},
    {OutageCause::kOutageMovingWhileNotAllowed, "EVENT_REASON_OUTAGE_MOVING_WHILE_NOT_ALLOWED",
     "MOVING_WHILE_NOT_ALLOWED"},
    {OutageCause::kOutageSkySearch, "EVENT_REASON_OUTAGE_SKY_SEARCH", "SKY_SEARCH"},
    {OutageCause::kHighDownlinkPacketLoss, "EVENT_REASON_HIGH_DOWNLINK_PACKET_LOSS",
     "HIGH_DOWNLINK_PACKET_LOSS"},
    {OutageCause::kUtAlertRainSnrPersistentlyLow,
     "EVENT_REASON_UT_ALERT_RAIN_SNR_PERSISTENTLY_LOW", "RAIN_SNR_PERSISTENTLY_LOW"},
    {OutageCause::kUtAlertEthNoLink, "EVENT_REASON_UT_ALERT_ETH_NO_LINK", "ETH_NO_LINK"},
    {OutageCause::kUtAlertEthSlowLink, "EVENT_REASON_UT_ALERT_ETH_SLOW_LINK", "ETH_SLOW_LINK"},
    {OutageCause::kUtAlertEthSlowLink100, "EVENT_REASON_UT_ALERT_ETH_SLOW_LINK_100",
     "ETH_SLOW_LINK_100"},
}};

}  // namespace

std::string_view to_string(FrameType t) {
    return t == FrameType::kEarth ? "FRAME_EARTH" : "FRAME_UT";
}

std::optional<FrameType> frame_type_from_string(std::string_view s) {
    if (s == "FRAME_EARTH") return FrameType::kEarth;
    if (s == "FRAME_UT") return FrameType::kUt;
    return std::nullopt;
}

std::string_view to_string(LocationSource s) {
    return s == LocationSource::kDishGnss ? "DISH_GNSS" : "EXTERNAL_GPS";
}

std::optional<LocationSource> location_source_from_string(std::string_view s) {
    if (s == "DISH_GNSS") return LocationSource::kDishGnss;
    if (s == "EXTERNAL_GPS") return LocationSource::kExternalGps;
    return std::nullopt;
}

std::string_view to_string(TrafficDirection d) {
    return d == TrafficDirection::kDown ? "DOWN" : "UP";
}

std::optional<TrafficDirection> traffic_direction_from_string(std::string_view s) {
    if (s == "DOWN") return TrafficDirection::kDown;
    if (s == "UP") return TrafficDirection::kUp;
    return std::nullopt;
}

std::string_view to_string(OutageCause c) {
    for (const auto& n : kCauseNames) {
        if (n.cause == c) return n.full;
    }
    return kCauseNames[0].full;
}

std::string_view short_name(OutageCause c) {
    for (const auto& n : kCauseNames) {
        if (n.cause == c) return n.brief;
    }
    return kCauseNames[0].brief;
}

std::optional<OutageCause> outage_cause_from_string(std::string_view s) {
    for (const auto& n : kCauseNames) {
        if (s == n.full || s == n.brief) return n.cause;
    }
    return std::nullopt;
}

}  // namespace starident
