from labourflow.ingest.Diagnostics import DROPPED_NO_DESTINATION, DROPPED_NO_ORIGIN, \
    DROPPED_SAME_CITY, INTENTS
from labourflow.matching.PlaceResolver import resolve_destination
from labourflow.representations.FlowIntent import FlowIntent
from labourflow.representations.Quarter import quarter_of


def resolve_record(record, origin, registry, dictionary):
    """
    Turns one located query into a flow intent. The query text is searched first, the clicked
    title only when the text names no destination.
    :param record: QueryRecord.
    :param origin: City id of the query location, or None.
    :param registry: Registry.
    :param dictionary: PlaceDictionary of the registry.
    :return: FlowIntent, or the name of the diagnostic counter explaining the drop.
    """
    if origin is None:
        return DROPPED_NO_ORIGIN

    destination = resolve_destination(dictionary.match(record.query_text), origin, registry)
    if destination is None:
        destination = resolve_destination(dictionary.match(record.clicked_title), origin,
                                          registry)
    if destination is None:
        return DROPPED_NO_DESTINATION
    if destination == origin:
        return DROPPED_SAME_CITY
    return FlowIntent(origin, destination, quarter_of(record.timestamp))


def extract_flow_intents(records, registry, dictionary, diagnostics=None):
    """
    Cross-city flow intents of filtered and deduplicated queries.
    :param records: Iterable of QueryRecord.
    :param registry: Registry.
    :param dictionary: PlaceDictionary built from the same registry.
    :param diagnostics: Optional Diagnostics receiving the drop counters.
    :return: Generator of FlowIntent.
    """
    for record in records:
        outcome = resolve_record(record, registry.locate_point(record.location), registry,
                                 dictionary)
        if isinstance(outcome, FlowIntent):
            if diagnostics is not None:
                diagnostics.add(INTENTS)
            yield outcome
        elif diagnostics is not None:
            diagnostics.add(outcome)
