class AdapterError(Exception):
    """Any adapter failure: bad audio, bad segments, model problems."""
