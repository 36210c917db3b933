from .corpus import corpus_ids, make_synthetic_corpus
from .image import BlockGrid, Image, assemble, partition
from .pgm import image_ids, load_images, load_pgm, save_pgm

__all__ = [
    "BlockGrid",
    "Image",
    "assemble",
    "corpus_ids",
    "image_ids",
    "load_images",
    "load_pgm",
    "make_synthetic_corpus",
    "partition",
    "save_pgm",
]
