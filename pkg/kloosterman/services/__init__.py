from .corpus_service import CorpusReport, KloostermanCorpusService, RamanujanReport

__all__ = ["CorpusReport", "KloostermanCorpusService", "RamanujanReport"]
