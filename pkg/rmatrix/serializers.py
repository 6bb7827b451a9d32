from rest_framework import serializers


class OperatorDumpSerializer(serializers.Serializer):
    """
    Every entry of an arity-2 operator as [row, col, re, im] with row the
    flattened output index and col the flattened input index.
    """
    N = serializers.IntegerField()
    kind = serializers.CharField()
    dim = serializers.SerializerMethodField()
    entries = serializers.SerializerMethodField()

    def get_dim(self, obj):
        return obj['operator'].dim

    def get_entries(self, obj):
        return [
            [int(row), int(col), float(value.real), float(value.imag)]
            for row, col, value in obj['operator'].dense_entries()
        ]
