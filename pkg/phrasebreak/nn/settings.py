from ..conf import Settings


class EncoderConfig(Settings):
    SECTION = "encoder"

    VOCAB_SIZE = None
    """
    Number of token ids. Left ``None`` in config files; set from the vocabulary.
    """

    D_MODEL = 128
    N_HEADS = 4
    N_LAYERS = 2
    FFN_DIM = 256

    MAX_LEN = 128
    """
    Longest encoded sequence, ``[CLS]`` included.
    """

    DROPOUT_PROB = 0.1

    def validate(self):
        self.require(
            self.vocab_size is None or (isinstance(self.vocab_size, int) and self.vocab_size >= 8),
            "vocab_size must be at least 8",
        )
        for key in ("d_model", "n_heads", "n_layers", "ffn_dim"):
            self.require(
                isinstance(getattr(self, key), int) and getattr(self, key) >= 1,
                "{} must be a positive integer".format(key),
            )
        self.require(self.d_model % self.n_heads == 0, "d_model must be divisible by n_heads")
        self.require(isinstance(self.max_len, int) and self.max_len >= 2, "max_len must be >= 2")
        self.require(0 <= self.dropout_prob < 1, "dropout_prob must be in [0, 1)")


class BiLstmConfig(Settings):
    SECTION = "bilstm"

    VOCAB_SIZE = None
    EMBED_DIM = 64

    HIDDEN_SIZE = 128
    """
    Units per direction.
    """

    MAX_LEN = 128

    def validate(self):
        self.require(
            self.vocab_size is None or (isinstance(self.vocab_size, int) and self.vocab_size >= 8),
            "vocab_size must be at least 8",
        )
        self.require(
            isinstance(self.embed_dim, int) and self.embed_dim >= 1, "embed_dim must be >= 1"
        )
        self.require(
            isinstance(self.hidden_size, int) and self.hidden_size >= 1,
            "hidden_size must be >= 1",
        )
        self.require(isinstance(self.max_len, int) and self.max_len >= 2, "max_len must be >= 2")
