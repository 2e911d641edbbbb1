def disambiguate(candidates, origin, registry):
    """
    Picks the place an ambiguous name refers to. The rules are checked in order until one place
    is left: (1) same province as the origin, (2) higher administrative level, (3) closer to the
    origin. Remaining ties go to the smallest place id.
    :param candidates: Non-empty list of place ids.
    :param origin: City id of the query origin.
    :param registry: Registry.
    :return: Place id.
    """
    remaining = sorted(set(candidates))
    if not remaining:
        raise ValueError("No candidate to disambiguate")
    if len(remaining) == 1:
        return remaining[0]

    origin_city = registry.get(origin)

    # Rule 1: same province as the origin
    same_province = [c for c in remaining
                     if registry.get(c).province_id == origin_city.province_id]
    if same_province:
        remaining = same_province
    if len(remaining) == 1:
        return remaining[0]

    # Rule 2: higher administrative level
    top_rank = min(registry.get(c).admin_rank for c in remaining)
    remaining = [c for c in remaining if registry.get(c).admin_rank == top_rank]
    if len(remaining) == 1:
        return remaining[0]

    # Rule 3: closer to the origin
    distances = dict((c, registry.city_distance(origin, c)) for c in remaining)
    closest = min(distances.values())
    remaining = [c for c in remaining if distances[c] == closest]

    return remaining[0]


def resolve_destination(matches, origin, registry):
    """
    Destination city of a query from its place mentions. Each mention is disambiguated, then the
    most specific place wins (district before city before province), ties going to the first
    mention. Districts map to their city, provinces alone give no destination.
    :param matches: List of MatchCandidate, by increasing span.
    :param origin: City id of the query origin.
    :param registry: Registry.
    :return: City id or None.
    """
    best = None
    for match in matches:
        place = registry.get(disambiguate(match.candidates, origin, registry))
        if best is None or place.admin_rank > best.admin_rank:
            best = place
    if best is None:
        return None
    return registry.city_of(best.id)
