"""
Caching helpers.

``cached_property`` stores the computed value in the instance ``__dict__``, which also works for frozen dataclasses
because the descriptor never goes through ``__setattr__``.  The per-order caches wrap ``cachetools.LRUCache`` so that
expensive per-order tables (Euler-Frobenius roots, B-splines) are computed once per process.
"""

from __future__ import annotations

from threading import RLock
from types import GenericAlias
from typing import TypeVar, Union, Callable, Generic, overload

from cachetools import LRUCache, cached

__all__ = ['CachedProperty', 'cached_property', 'order_cache']

_NOT_FOUND = object()

T = TypeVar('T')
Obj = TypeVar('Obj')
Method = Callable[[Obj], T]


class CachedProperty(Generic[T]):
    def __init__(self, func: Method, block: bool = False):
        """
        A lazy / cached property for immutable value objects.

        :param func: The method for which results should be cached.
        :param block: If True, concurrent first accesses for the same instance are serialized
        """
        self.func = func
        self.name = None
        self.__doc__ = func.__doc__
        self.block = block
        self.lock = RLock()

    def __set_name__(self, owner, name: str):
        if (orig := self.name) is None:
            self.name = name
        elif orig != name:
            raise TypeError(
                f'Cannot assign the same {self.__class__.__name__} to two different names ({orig!r} and {name!r}).'
            )

    @overload
    def __get__(self, instance: None, owner) -> CachedProperty[T]:
        ...

    @overload
    def __get__(self, instance: Obj, owner) -> T:
        ...

    def __get__(self, instance, owner):
        if instance is None:
            return self
        try:
            cache = instance.__dict__
        except AttributeError:
            cls = instance.__class__.__name__
            raise TypeError(f"Unable to cache {cls}.{self.name} because {cls} has no '__dict__' attribute") from None

        if (val := cache.get(self.name, _NOT_FOUND)) is _NOT_FOUND:
            if self.block:
                with self.lock:
                    if (val := cache.get(self.name, _NOT_FOUND)) is _NOT_FOUND:
                        cache[self.name] = val = self.func(instance)
            else:
                cache[self.name] = val = self.func(instance)
        return val

    __class_getitem__ = classmethod(GenericAlias)


def cached_property(func: Method = None, *, block: bool = False) -> Union[CachedProperty[T], Callable]:
    if func is not None:
        return CachedProperty(func, block)

    def _cached_property(method: Method) -> CachedProperty[T]:
        return CachedProperty(method, block)

    return _cached_property


def order_cache(maxsize: int = 16):
    """Decorator that caches the results of a function of a polynomial / spline order in a bounded LRU cache."""
    cache = LRUCache(maxsize=maxsize)
    return cached(cache, lock=RLock())
